"""Exact q -> 1 limits of rescaled q-family data.

All q-data live in Q(i)(s) with ``q = s**2``; integer parameters make every
``q**a`` a monomial in ``s``.  A limit is taken by reducing the rational
function and evaluating at ``s = 1``; a surviving pole is reported, never
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Mapping

from .catalog import (
    al_salam_carlitz1_spec,
    al_salam_chihara_spec,
    askey_wilson_spec,
    build_family,
    stieltjes_wigert_spec,
)
from .classify import BidegreeTriple, SeqSpecQ, bidegree_triple, degree_triple
from .exactnum import ONE, I, PoleAtPoint, RatFun, Scalar
from .report import Report
from .spectral import recurrence_terms


class UnknownLimitCase(KeyError):
    pass


class NonIntegerExponent(ValueError):
    pass


class PoleAtQ1(ArithmeticError):
    pass


class MismatchAt(AssertionError):
    def __init__(self, k: int, which: str, got: Any, want: Any) -> None:
        super().__init__(f"{which}_{k}: limit {got} != target {want}")
        self.k = k
        self.which = which
        self.got = got
        self.want = want


S = RatFun.gen("s")
Q = S * S


def q_power(e: int) -> RatFun:
    return Q**e


def _int_param(p: Mapping[str, Any], name: str) -> int:
    v = p[name]
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    z = Scalar.coerce(v)
    if not z.is_integer():
        raise NonIntegerExponent(f"{name} = {z} must be an integer (it is an exponent of q)")
    return int(z.re)


def limit_value(f) -> Scalar:
    """Value at ``s = 1`` of the reduced rational function ``f``."""
    if not isinstance(f, RatFun):
        return Scalar.coerce(f)
    try:
        return f.evaluate(ONE)
    except PoleAtPoint:
        raise PoleAtQ1(f"{f} has a pole at q = 1") from None


def numeric_probe(f: RatFun, steps: int = 6) -> list[float]:
    """Debugging aid: floats of ``f`` at ``q = 1 - 10^-j``.  Not used for certification."""
    out = []
    for j in range(1, steps + 1):
        q = 1 - Fraction(1, 10**j)
        # s = sqrt(q) is irrational in general; a rational point near it suffices here
        s = Fraction(round(float(q) ** 0.5 * 10 ** (j + 3)), 10 ** (j + 3))
        try:
            out.append(float(f.evaluate(Scalar(s)).re))
        except PoleAtPoint:
            out.append(float("nan"))
    return out


# ---------------------------------------------------------------------------
# rescaling and symbolic data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rescaling:
    """``x -> alpha + beta x`` in the variable, then ``h -> mu h + sigma``, ``g -> mu g / beta``."""

    alpha: Any = 0
    beta: Any = 1
    mu: Any = 1
    sigma: Any = 0

    def apply(self, h, x, g):
        return (
            self.mu * h + self.sigma,
            (x - self.alpha) / self.beta,
            self.mu * g / self.beta,
        )


@dataclass(frozen=True)
class QDataSymbolic:
    """Sequences ``k -> RatFun in s``, with the generating q-spec kept for reference."""

    case: str
    params: dict
    spec: SeqSpecQ
    rescaling: Rescaling

    def raw(self, k: int) -> tuple[RatFun, RatFun, RatFun]:
        return _raw_cached(self, k)

    def h(self, k: int) -> RatFun:
        return self.at(k)[0]

    def x(self, k: int) -> RatFun:
        return self.at(k)[1]

    def g(self, k: int) -> RatFun:
        return self.at(k)[2]

    def at(self, k: int) -> tuple[RatFun, RatFun, RatFun]:
        return _at_cached(self, k)

    def __hash__(self) -> int:
        return hash((self.case, tuple(sorted((k, str(v)) for k, v in self.params.items()))))


def _lift(v) -> RatFun:
    return v if isinstance(v, RatFun) else RatFun.const(v, "s")


@lru_cache(maxsize=4096)
def _raw_cached(d: QDataSymbolic, k: int):
    s = d.spec
    return _lift(s.h(k)), _lift(s.x(k)), _lift(s.g(k))


@lru_cache(maxsize=4096)
def _at_cached(d: QDataSymbolic, k: int):
    return d.rescaling.apply(*_raw_cached(d, k))


class _Seq:
    """Indexable view ``seq[k]`` used to feed :func:`recurrence_terms`."""

    def __init__(self, fn: Callable[[int], Any]) -> None:
        self.fn = fn

    def __getitem__(self, k: int):
        return self.fn(k)


# ---------------------------------------------------------------------------
# built-in cases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitCase:
    name: str
    source: str
    target: str
    description: str
    params: tuple[str, ...] = ()
    build: Callable[[dict], QDataSymbolic] | None = None
    reference: Callable[[dict, int], tuple[RatFun, RatFun, RatFun]] | None = None
    # displayed data may differ from the derived data by an exact factor per sequence
    reference_factor: Callable[[dict, int], tuple[Any, Any, Any]] | None = None
    target_params: Callable[[dict], dict] | None = None
    # affine change (rho, sigma) on h and g turning the limit into the catalog normalization
    target_transform: Callable[[dict], tuple[Any, Any]] | None = None
    target_display: Callable[[dict, int], tuple[Scalar, Scalar, Scalar]] | None = None
    bidegree_rule_holds: bool = True
    defaults: dict = field(default_factory=dict)

    @property
    def stretch(self) -> bool:
        return self.build is None


def _aw_build(p: dict) -> QDataSymbolic:
    a, b, c, d = (_int_param(p, n) for n in "abcd")
    spec = askey_wilson_spec(q_power(a), q_power(b), q_power(c), q_power(d), Q)
    one_q = 1 - Q
    return QDataSymbolic(
        "aw-to-wilson", dict(p), spec,
        Rescaling(alpha=2, beta=-(one_q**2), mu=-(one_q**-2)),
    )


def _aw_reference(p: dict, k: int):
    a, b, c, d = (_int_param(p, n) for n in "abcd")
    sm = a + b + c + d
    one_q = 1 - Q
    h = -(q_power(-k) * (1 - q_power(k)) * (1 - q_power(k + sm - 1))) / one_q**2
    # q^{(a+k)/2} = s^{a+k}
    half = S ** (a + k) - S ** (-(a + k))
    x = -(half**2) / one_q**2
    g = (
        q_power(-a - 2 * k + 1)
        * (1 - q_power(k + a + b - 1))
        * (1 - q_power(k + a + c - 1))
        * (1 - q_power(k + a + d - 1))
        * (1 - q_power(k))
        / one_q**4
    )
    return h, x, g


def _asc_w(p: dict) -> Scalar:
    w = Scalar.coerce(p["w"])
    if not w or w * w == ONE:
        raise ValueError("w must be nonzero with w^2 != 1")
    return w


def _asc_build(p: dict) -> QDataSymbolic:
    lam = _int_param(p, "lam")
    w = _asc_w(p)
    t = w * w
    spec = al_salam_chihara_spec(q_power(lam) * w, q_power(lam) / w, Q)
    one_q = 1 - Q
    # 2 cos(phi) = w + 1/w and 2 sin(phi) = i (w - 1/w) with w = e^{-i phi}
    return QDataSymbolic(
        "asc-to-mp", dict(p), spec,
        Rescaling(alpha=w + w.inverse(), beta=one_q * I * (t - 1) / w, mu=one_q.inverse()),
    )


def _asc_reference(p: dict, k: int):
    lam = _int_param(p, "lam")
    t = _asc_w(p) ** 2
    one_q = 1 - Q
    h = -(1 - q_power(-k)) / one_q
    x = -I * (1 - q_power(-lam - k)) / one_q * (1 - q_power(lam + k) * t) / (1 - t)
    # 2 e^{-i phi} sin(phi) = i (t - 1)
    g = (
        q_power(-lam - 2 * k - 1)
        / (I * (t - 1))
        * (1 - q_power(2 * lam + k - 1))
        * (1 - q_power(k))
        / one_q**2
    )
    return h, x, g


def _asc_target_display(p: dict, k: int):
    lam = _int_param(p, "lam")
    t = _asc_w(p) ** 2
    return Scalar(k), I * (lam + k), Scalar(k * (2 * lam + k - 1)) / (I * (t - 1))


def _asc1_build(p: dict) -> QDataSymbolic:
    a = Scalar.coerce(p["a"])
    if not a:
        raise ValueError("a must be nonzero")
    one_q = 1 - Q
    spec = al_salam_carlitz1_spec(-one_q * a, Q)
    return QDataSymbolic("asc1-to-charlier", dict(p), spec, Rescaling(alpha=1, beta=-one_q))


def _asc1_reference(p: dict, k: int):
    a = Scalar.coerce(p["a"])
    one_q = 1 - Q
    return (
        a.inverse() * (1 - q_power(-k)) / one_q,
        (1 - q_power(k)) / one_q,
        -(1 - q_power(-k)) / one_q,
    )


def _sw_build(p: dict) -> QDataSymbolic:
    return QDataSymbolic("sw-to-binomial", dict(p), stieltjes_wigert_spec(Q), Rescaling())


def _sw_reference(p: dict, k: int):
    one_q = 1 - Q
    return -(1 - q_power(k)) / one_q, RatFun.const(0, "s"), -(1 - q_power(-k)) / one_q


def _unit(p, k):
    return ONE, ONE, ONE


CASES: dict[str, LimitCase] = {
    c.name: c
    for c in (
        LimitCase(
            "aw-to-wilson", "askey_wilson", "wilson",
            "a,b,c,d -> q^a,q^b,q^c,q^d; x -> 2 - (1-q)^2 x; h, g times -1/(1-q)^2",
            ("a", "b", "c", "d"), _aw_build, _aw_reference, _unit,
            target_params=lambda p: {n: p[n] for n in "abcd"},
            defaults={"a": 2, "b": 4, "c": 6, "d": 8},
        ),
        LimitCase(
            "asc-to-mp", "al_salam_chihara", "meixner_pollaczek",
            "a,b -> q^lam w, q^lam / w; x -> (w + 1/w) + i(1-q)(w - 1/w) x; h, g times 1/(1-q)",
            ("lam", "w"), _asc_build, _asc_reference,
            lambda p, k: (ONE, ONE, Q * Q),
            target_params=lambda p: {"lam": p["lam"], "t": _asc_w(p) ** 2},
            target_transform=lambda p: (
                I * (_asc_w(p) ** 2 - 1),
                I * (_asc_w(p) ** 2 - 1) * Scalar.coerce(p["lam"]),
            ),
            target_display=_asc_target_display,
            bidegree_rule_holds=False,
            defaults={"lam": 1, "w": 2},
        ),
        LimitCase(
            "asc1-to-charlier", "al_salam_carlitz1", "charlier",
            "a -> -(1-q) a; x -> 1 - (1-q) x",
            ("a",), _asc1_build, _asc1_reference, _unit,
            target_params=lambda p: {"a": p["a"]},
            defaults={"a": 1},
        ),
        LimitCase(
            "sw-to-binomial", "stieltjes_wigert", "binomial", "identity",
            (), _sw_build, _sw_reference, _unit, target_params=lambda p: {},
        ),
    )
}

for _name, _src, _dst in (
    ("qracah-to-racah", "q-Racah", "racah"),
    ("cdqhahn-to-cdhahn", "continuous dual q-Hahn", "continuous_dual_hahn"),
    ("dqhahn-to-dhahn", "dual q-Hahn", "dual_hahn"),
    ("qhahn-to-hahn", "q-Hahn", "hahn"),
    ("qinvmeixner-to-meixner", "q^-1-Meixner", "meixner"),
    ("affine-qkrawtchouk-to-krawtchouk", "affine q-Krawtchouk", "krawtchouk"),
    ("littleqjacobi-to-jacobi", "little q-Jacobi", "jacobi"),
    ("qinvcharlier-to-charlier", "q^-1-Charlier", "charlier"),
    ("littleqlaguerre-to-laguerre", "little q-Laguerre", "laguerre"),
    ("qbessel-to-bessel", "q-Bessel", "bessel"),
    ("qbinomial-to-binomial", "q-binomial", "binomial"),
):
    CASES[_name] = LimitCase(_name, _src, _dst, "no rescaling available (stretch case)")


def limit_case(name: str) -> LimitCase:
    try:
        return CASES[name]
    except KeyError:
        raise UnknownLimitCase(name) from None


def _merge(case: LimitCase, params: Mapping[str, Any] | None) -> dict:
    p = dict(case.defaults)
    for k, v in (params or {}).items():
        k = {"λ": "lam", "lambda": "lam"}.get(k, k)
        if k not in case.params:
            raise UnknownLimitCase(f"{case.name} has no parameter {k!r}")
        p[k] = v
    missing = [n for n in case.params if n not in p]
    if missing:
        raise ValueError(f"{case.name} needs parameters {missing}")
    return p


def rescale_qdata(family: str, params: Mapping[str, Any] | None, case: LimitCase | str) -> QDataSymbolic:
    """Symbolic rescaled data of ``family`` under a built-in limit case."""
    c = limit_case(case) if isinstance(case, str) else case
    if c.stretch:
        raise UnknownLimitCase(f"{c.name}: no rescaling is available")
    if family not in (c.source, c.name):
        raise UnknownLimitCase(f"{c.name} starts from {c.source}, not {family}")
    return c.build(_merge(c, params))


def limit_q_to_1(d: QDataSymbolic | RatFun, k: int | None = None, which: str = "h") -> Scalar:
    """Exact limit at ``q = 1`` of ``which``-data at index ``k`` (or of a bare RatFun)."""
    if isinstance(d, RatFun):
        return limit_value(d)
    if k is None:
        raise TypeError("index k required")
    return limit_value(getattr(d, which)(k))


def unrescaled_aw_h(params: Mapping[str, Any], k: int) -> RatFun:
    a, b, c, d = (_int_param(params, n) for n in "abcd")
    spec = askey_wilson_spec(q_power(a), q_power(b), q_power(c), q_power(d), Q)
    return _lift(spec.h(k))


def limit_recurrence(d: QDataSymbolic, n: int):
    """``(A_n, B_n)`` of the rescaled q-data as RatFuns in ``s``."""
    return recurrence_terms(_Seq(d.h), _Seq(d.x), _Seq(d.g), n)


def certify_limit(case: LimitCase | str, K: int = 8, params: Mapping[str, Any] | None = None) -> Report:
    """Exact certification of one limit instance; problems are recorded in the report."""
    r = Report()
    try:
        c = limit_case(case) if isinstance(case, str) else case
    except UnknownLimitCase as e:
        r.error("case", e)
        return r
    if c.stretch:
        r.error("rescaling", f"{c.name}: {c.description}")
        return r
    try:
        p = _merge(c, params)
        d = c.build(p)
    except (ValueError, KeyError) as e:
        r.error("rescaling", e)
        return r
    r.add("rescaling", True, f"{c.name} [{', '.join(f'{k}={v}' for k, v in p.items())}]: {c.description}")

    # derived data against the displayed lines
    try:
        bad = []
        for k in range(K + 1):
            ref = c.reference(p, k)
            fac = c.reference_factor(p, k)
            for which, got, want, f in zip("hxg", d.at(k), ref, fac):
                if got != want * f:
                    bad.append(f"{which}_{k}")
        note = ""
        if c.reference_factor is not _unit:
            note = "; derived g_k = q^2 * displayed g_k"
        r.add("displayed_data", not bad, (f"k <= {K}{note}" if not bad else f"differs at {bad[:4]}"))
    except Exception as e:  # noqa: BLE001
        r.error("displayed_data", e)

    # limits against the catalog target
    limits: list[tuple[Scalar, Scalar, Scalar]] = []
    try:
        for k in range(K + 1):
            limits.append(tuple(limit_value(v) for v in d.at(k)))
        r.add("limit_exists", True, f"no pole at q=1 for k <= {K}")
    except PoleAtQ1 as e:
        r.error("limit_exists", e)
        return r

    try:
        tp = c.target_params(p)
        tgt = build_family(c.target, tp, K=max(K, 1) + 1).triple
        rho, sigma = c.target_transform(p) if c.target_transform else (ONE, Scalar(0))
        mism = None
        for k, (h, x, g) in enumerate(limits):
            cand = (rho * h + sigma, x, rho * g)
            for which, got, want in zip("hxg", cand, (tgt.h[k], tgt.x[k], tgt.g[k])):
                if got != want:
                    mism = MismatchAt(k, which, got, want)
                    break
            if mism:
                break
        shown = ", ".join(f"{k}={Scalar.coerce(v)}" for k, v in tp.items())
        detail = f"{c.target} [{shown}], k <= {K}"
        if c.target_transform:
            detail += f"; h -> {rho} h + {sigma}, g -> {rho} g"
        r.add("target_data", mism is None, detail if mism is None else str(mism))
    except Exception as e:  # noqa: BLE001
        r.error("target_data", e)

    if c.target_display is not None:
        bad = [k for k, lim in enumerate(limits) if tuple(lim) != c.target_display(p, k)]
        r.add("target_display", not bad, f"k <= {K}" if not bad else f"differs at k={bad[:4]}")

    # bidegree -> degree arithmetic
    try:
        bd = bidegree_triple(d.spec)
        src_deg = bd.to_degree()
        tgt_deg = degree_triple(build_family(c.target, c.target_params(p)).spec).as_tuple()
        holds = src_deg == tgt_deg
        if c.bidegree_rule_holds:
            r.add("bidegree_rule", holds, f"{bd} -> {src_deg}, target {tgt_deg}")
        else:
            r.add(
                "bidegree_rule",
                not holds,
                f"{bd} -> {src_deg}, target {tgt_deg} (known exception to the rule)",
            )
    except Exception as e:  # noqa: BLE001
        r.error("bidegree_rule", e)
    return r


def degenerate_check(params: Mapping[str, Any] | None = None, K: int = 8) -> Report:
    """Without rescaling the Askey-Wilson eigenvalues collapse to 0 at q = 1."""
    r = Report()
    p = _merge(CASES["aw-to-wilson"], params)
    vals = [limit_value(unrescaled_aw_h(p, k)) for k in range(K + 1)]
    r.add("unrescaled_degenerate", all(not v for v in vals), f"lim h_k = 0 for k <= {K}")
    return r


def commutation_check(case: str = "asc1-to-charlier", params=None, n_max: int = 3) -> Report:
    """``lim A_n, B_n`` of the q-data equal ``A_n, B_n`` of the limit data."""
    r = Report()
    c = limit_case(case)
    d = c.build(_merge(c, params))
    K = n_max + 2
    lim = [tuple(limit_value(v) for v in d.at(k)) for k in range(K + 1)]
    hs, xs, gs = ([row[i] for row in lim] for i in range(3))
    bad = []
    for n in range(n_max + 1):
        Aq, Bq = limit_recurrence(d, n)
        A1, B1 = recurrence_terms(hs, xs, gs, n)
        if limit_value(Aq) != A1 or (Bq is not None and limit_value(Bq) != B1):
            bad.append(n)
    r.add("commutation", not bad, f"n <= {n_max}" if not bad else f"differs at n={bad}")
    return r


def bidegree_of_source(case: str) -> BidegreeTriple:
    c = limit_case(case)
    return bidegree_triple(c.build(_merge(c, None)).spec)

