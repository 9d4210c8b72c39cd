"""Acceptance suite: one test per criterion, exact comparisons only.

Every test prints a single ``ACCEPTANCE <n> <name>: PASS|FAIL <detail>`` line
(outside pytest's capture) before asserting.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from verdestar.catalog import (
    FAMILIES,
    Q_FAMILIES,
    build_family,
    catalog_names,
    family,
    kls_oracle,
    oracle_points,
    sample_family,
)
from verdestar.classify import (
    InvalidSpec,
    SeqSpecQ1,
    check_q1_constraints,
    classify_spec,
    degree_triple,
    general_constraints,
    scale_h,
    scale_x,
    scheme_graph,
    shift_h,
    shift_x,
    verify_d_remark,
    verify_difference_eqs,
)
from verdestar.exactnum import Scalar
from verdestar.qlimits import certify_limit, degenerate_check
from verdestar.spectral import (
    DualNotDefined,
    HCollision,
    dual_identity_check,
    dualize,
    hypergeometric_U,
    ttrr_residual,
    verify_eigen,
)

SEED = 20240917

# node ids for each family, read off the scheme figure
EXPECTED_NODE = {
    "wilson": "W/R",
    "racah": "W/R",
    "continuous_dual_hahn": "cdH/dH",
    "dual_hahn": "cdH/dH",
    "continuous_hahn": "cH/H",
    "hahn": "cH/H",
    "meixner_pollaczek": "M-P/M/K",
    "meixner": "M-P/M/K",
    "krawtchouk": "M-P/M/K",
    "jacobi": "J",
    "charlier": "Ch",
    "laguerre": "L",
    "bessel": "B",
    "binomial": "bin",
}


@pytest.fixture
def verdict(capsys):
    def emit(number: int, name: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {name}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _instances(name: str, count: int, rng: random.Random, need_dual: bool = False):
    out = [build_family(name)]
    while len(out) < count:
        out.append(sample_family(name, rng, need_dual=need_dual))
    return out


def _rand(rng: random.Random, lo: int = -6, hi: int = 6, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3)))
        if v or not nonzero:
            return v


# 1 ------------------------------------------------------------------------------


def test_criterion_01_catalog_completeness(verdict):
    bad = []
    for name in catalog_names():
        e = family(name)
        try:
            b = build_family(name)
        except Exception as exc:  # noqa: BLE001
            bad.append(f"{name}: {exc}")
            continue
        if not check_q1_constraints(b.spec):
            bad.append(f"{name}: constraints")
        if degree_triple(b.spec) != e.label:
            bad.append(f"{name}: {degree_triple(b.spec)} != {e.label}")
    ok = len(FAMILIES) == 14 and not bad
    verdict(1, "catalog completeness", ok, f"{14 - len(bad)}/14 families" + (f"; {bad}" if bad else ""))


# 2 ------------------------------------------------------------------------------


def test_criterion_02_ttrr_sufficiency(verdict):
    rng = random.Random(SEED + 2)
    bad, checked = [], 0
    for name in catalog_names():
        for _ in range(3):
            b = sample_family(name, rng)
            top = 7 if b.N is None else min(7, b.N)
            t = build_family(name, b.params, K=top + 2).triple
            for n in range(1, top + 1):
                checked += 1
                if not ttrr_residual(t, n).is_zero():
                    bad.append((name, dict(b.params), n))
    verdict(2, "TTRR sufficiency", not bad, f"{checked} levels, zero residual" if not bad else f"nonzero at {bad[:3]}")


# 3 ------------------------------------------------------------------------------


def _violating_spec(rng: random.Random) -> SeqSpecQ1:
    while True:
        a0, a1, a2, b0, b1, b2, d1, d2 = (_rand(rng) for _ in range(8))
        d3 = a1 * b2 + a2 * b1 - 2 * a2 * b2 + _rand(rng, nonzero=True)
        d4 = a2 * b2 + _rand(rng, -2, 2)
        try:
            s = SeqSpecQ1(a0, a1, a2, b0, b1, b2, d1, d2, d3, d4)
            t = s.to_triple(6)
        except (InvalidSpec, HCollision):
            continue
        if all(t.g[k] for k in range(1, 6)) and not check_q1_constraints(s):
            return s


def test_criterion_03_ttrr_necessity(verdict):
    rng = random.Random(SEED + 3)
    caught, total = 0, 25
    for _ in range(total):
        s = _violating_spec(rng)
        t = s.to_triple(6)
        if any(not ttrr_residual(t, n).is_zero() for n in (1, 2, 3)):
            caught += 1
    verdict(3, "TTRR necessity", caught == total, f"{caught}/{total} violating specs give a nonzero residual at n <= 3")


# 4 ------------------------------------------------------------------------------


def test_criterion_04_eigen_identity(verdict):
    rng = random.Random(SEED + 4)
    bad, checked = [], 0
    for name in catalog_names(include_q=True):
        for b in _instances(name, 3, rng):
            top = 8 if b.N is None else min(8, b.N)
            t = build_family(name, b.params, K=9).triple if b.N is None else b.triple
            for n in range(top + 1):
                checked += 1
                if not verify_eigen(t, n):
                    bad.append((name, n))
    verdict(4, "eigen identity", not bad, f"{checked} instances x degrees" if not bad else f"fails at {bad[:3]}")


# 5 ------------------------------------------------------------------------------


def test_criterion_05_duality(verdict):
    rng = random.Random(SEED + 5)
    bad, checked, reported = [], 0, []
    for name in catalog_names(include_q=True):
        e = family(name)
        if not e.dual_defined:
            try:
                dualize(build_family(name).triple)
                bad.append(f"{name}: dual unexpectedly defined")
            except DualNotDefined:
                reported.append(e.acronym)
            continue
        for b in _instances(name, 2, rng, need_dual=True):
            top = 6 if b.N is None else min(6, b.N)
            t = build_family(name, b.params, K=7).triple if b.N is None else b.triple
            for n in range(top + 1):
                for m in range(top + 1):
                    checked += 1
                    if not dual_identity_check(t, n, m):
                        bad.append(f"{name} n={n} m={m}")
    expected = {"J", "L", "B", "bin"}
    ok = not bad and expected <= set(reported)
    verdict(5, "duality", ok, f"{checked} (n,m) pairs; DualNotDefined for {sorted(reported)}" + (f"; {bad[:3]}" if bad else ""))


# 6 ------------------------------------------------------------------------------


def test_criterion_06_hypergeometric_oracle(verdict):
    rng = random.Random(SEED + 6)
    bad, checked = [], 0
    for name in catalog_names(include_q=True):
        if family(name).oracle is None:
            continue
        for b in _instances(name, 2, rng):
            pts = oracle_points(b)
            if len(pts) < 3:
                bad.append(f"{name}: only {len(pts)} points")
            top = min(6, b.triple.max_degree())
            for n in range(top + 1):
                for at, kw in pts:
                    checked += 1
                    if hypergeometric_U(b.triple, n, at) != kls_oracle(name, b.params, n, at, **kw):
                        bad.append(f"{name} n={n} at={at}")
    verdict(6, "hypergeometric oracle", not bad, f"{checked} evaluations" if not bad else f"{bad[:3]}")


# 7 ------------------------------------------------------------------------------


def test_criterion_07_constraint_equivalence(verdict):
    rng = random.Random(SEED + 7)
    bad = 0
    for _ in range(10):
        a0, a1, a2, b0, b1, b2, d1, d2 = (Scalar(_rand(rng)) for _ in range(8))
        d3, d4 = a1 * b2 + a2 * b1 - 2 * a2 * b2, a2 * b2

        def h(k):
            return a0 + a1 * k + a2 * k * k

        def x(k):
            return b0 + b1 * k + b2 * k * k

        def g(k):
            return d1 * k + d2 * k**2 + d3 * k**3 + d4 * k**4

        if general_constraints(h(0), h(1), h(2), x(0), x(1), x(2), g(1), g(2), 3) != (g(3), g(4)):
            bad += 1
    for _ in range(10):
        q = Scalar(rng.choice((2, 3, Fraction(1, 2), Fraction(2, 3), -2)))
        am1, a0, a1, bm1, b0, b1, dm1, d1 = (Scalar(_rand(rng)) for _ in range(8))
        d2, dm2 = a1 * b1 / q, q * am1 * bm1
        d0 = -(dm2 + dm1 + d1 + d2)

        def hq(k):
            return am1 * q**-k + a0 + a1 * q**k

        def xq(k):
            return bm1 * q**-k + b0 + b1 * q**k

        def gq(k):
            return dm2 * q ** (-2 * k) + dm1 * q**-k + d0 + d1 * q**k + d2 * q ** (2 * k)

        xi = 1 + q + q.inverse()
        if general_constraints(hq(0), hq(1), hq(2), xq(0), xq(1), xq(2), gq(1), gq(2), xi) != (gq(3), gq(4)):
            bad += 1
    verdict(7, "constraint equivalence", bad == 0, f"{20 - bad}/20 random points (10 at xi=3, 10 q-case)")


# 8 ------------------------------------------------------------------------------


def test_criterion_08_difference_equations(verdict):
    rng = random.Random(SEED + 8)
    bad, checked = [], 0
    for name in catalog_names(include_q=True):
        for b in _instances(name, 2, rng):
            t = build_family(name, b.params, K=9).triple
            xi = 1 + b.params["q"] + b.params["q"] ** -1 if name in Q_FAMILIES else Scalar(3)
            checked += 1
            if not verify_difference_eqs(t, xi, 7):
                bad.append(f"{name}: difference equations")
            if not verify_d_remark(t, xi, 7):
                bad.append(f"{name}: d-remark")
    verdict(8, "difference equations", not bad, f"{checked} instances, k <= 7" if not bad else f"{bad[:3]}")


# 9 ------------------------------------------------------------------------------

LIMIT_INSTANCES = {
    "aw-to-wilson": [{"a": 2, "b": 4, "c": 6, "d": 8}, {"a": 2, "b": 2, "c": 4, "d": 6}, {"a": 4, "b": 6, "c": 2, "d": 10}],
    "asc-to-mp": [{"lam": 1, "w": 2}, {"lam": 2, "w": 3}, {"lam": 3, "w": -2}],
    "asc1-to-charlier": [{"a": 1}, {"a": 2}, {"a": -3}],
    # no free parameters: one instance is all there is
    "sw-to-binomial": [{}],
}


def test_criterion_09_q_limits(verdict):
    bad, done = [], 0
    for case, instances in LIMIT_INSTANCES.items():
        for p in instances:
            r = certify_limit(case, K=8, params=p)
            done += 1
            if not r.ok:
                bad.append(f"{case} {p}: {r.render()}")
    deg = degenerate_check({"a": 2, "b": 4, "c": 6, "d": 8}, K=8)
    ok = not bad and deg.ok
    verdict(9, "q -> 1 limits", ok, f"{done} certified instances, k <= 8; unrescaled AW h_k -> 0" if ok else f"{bad[:2]} {deg.render()}")


# 10 -----------------------------------------------------------------------------


def _generic_spec(rng: random.Random) -> SeqSpecQ1:
    while True:
        a0, a1, a2, b0, b1, b2, d1, d2 = (_rand(rng, nonzero=True) for _ in range(8))
        try:
            return SeqSpecQ1(a0, a1, a2, b0, b1, b2, d1, d2, a1 * b2 + a2 * b1 - 2 * a2 * b2, a2 * b2)
        except InvalidSpec:
            continue


def test_criterion_10_scheme_graph(verdict):
    rng = random.Random(SEED + 10)
    g = scheme_graph()
    n_nodes, n_edges = len(g.nodes), len(g.edges)
    problems = []
    if (n_nodes, n_edges) != (10, 13):
        problems.append(f"graph has {n_nodes} nodes and {n_edges} arrows, expected 10 and 13")

    for name in catalog_names():
        for b in _instances(name, 3, rng):
            spec = b.spec
            got = classify_spec(spec)
            if got != EXPECTED_NODE[name]:
                problems.append(f"{name} -> {got}")
            rho, sigma = Scalar(_rand(rng, nonzero=True)), Scalar(_rand(rng))
            for moved in (scale_h(spec, rho), shift_h(spec, sigma), scale_x(spec, rho), shift_x(spec, sigma)):
                if classify_spec(moved) != got:
                    problems.append(f"{name}: not symmetry invariant")
    for _ in range(10):
        if classify_spec(_generic_spec(rng)) != "W/R":
            problems.append("generic spec off W/R")

    others = [p for p in problems if not p.startswith("graph has")]
    detail = (
        f"{n_nodes} nodes, {n_edges} arrows (criterion asks 10 and 13); "
        + ("14 families, 10 generic specs and 4 symmetry maps classify correctly" if not others else "; ".join(others[:3]))
    )
    verdict(10, "scheme graph", not problems, detail)
