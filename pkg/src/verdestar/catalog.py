"""Executable catalog of the classical families and the q-families used in limits.

Each q=1 entry turns a parameter dict into a :class:`SeqSpecQ1`; q-entries
produce a :class:`SeqSpecQ`.  Every entry also carries an independent
oracle: the family's standard terminating (q-)hypergeometric sum, summed
term by term from Pochhammer symbols rather than from the data triple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping

from .classify import (
    BidegreeTriple,
    DegreeTriple,
    InvalidSpec,
    SeqSpecQ,
    SeqSpecQ1,
    bidegree_triple,
    check_q1_constraints,
    check_q_constraints,
    classify_spec,
    degree_triple,
    q1_constraint_report,
)
from .exactnum import I, ONE, ZERO, Poly, Scalar, pochhammer
from .report import Report
from .spectral import (
    DualNotDefined,
    HCollision,
    TripleData,
    dual_identity_check,
    dualize,
    hypergeometric_U,
    hypergeometric_factor,
    monic_u,
    ttrr_residual,
    verify_eigen,
)


class UnknownFamily(KeyError):
    pass


class InadmissibleParameters(ValueError):
    pass


class OracleUnavailable(LookupError):
    pass


Params = Mapping[str, Any]

_kk = Poly.gen("k")

GREEK = {
    "α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta", "λ": "lam",
    "al": "alpha", "be": "beta", "ga": "gamma", "de": "delta", "la": "lam", "lambda": "lam",
}


def _is_int(v: Scalar) -> bool:
    return v.is_integer()


def _nonpos_int(v: Scalar) -> bool:
    return v.is_integer() and v.re <= 0


def _positive_int(v: Scalar) -> bool:
    return v.is_integer() and v.re > 0


# ---------------------------------------------------------------------------
# terminating series, summed from Pochhammer symbols
# ---------------------------------------------------------------------------


def _factorial(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


def hyp_sum(n: int, upper: list, lower: list, z, pairs: list | None = None) -> Scalar:
    """``sum_{k=0}^n prod (upper)_k / prod (lower)_k * z^k / k!``.

    ``pairs`` holds callables ``k -> Scalar`` contributing extra numerator
    products (the quadratic-grid factor when no square root is supplied).
    """
    z = Scalar.coerce(z)
    total = ZERO
    for k in range(n + 1):
        num = ONE
        for u in upper:
            num = num * pochhammer(Scalar.coerce(u), k)
        for p in pairs or ():
            num = num * p(k)
        den = Scalar(_factorial(k))
        for lo in lower:
            den = den * pochhammer(Scalar.coerce(lo), k)
        total = total + num / den * z**k
    return total


def qpoch(a, q, k: int):
    out = ONE
    for j in range(k):
        out = out * (1 - a * q**j)
    return out


def qhyp_sum(n: int, upper: list, lower: list, q, z, pairs: list | None = None):
    """Terminating ``r phi s`` with the ``((-1)^k q^{k(k-1)/2})^{1+s-r}`` factor."""
    r = len(upper) + 2 * len(pairs or ())
    s = len(lower)
    e = 1 + s - r
    total = ZERO
    for k in range(n + 1):
        num = ONE
        for u in upper:
            num = num * qpoch(u, q, k)
        for p in pairs or ():
            num = num * p(k)
        den = qpoch(q, q, k)
        for lo in lower:
            den = den * qpoch(lo, q, k)
        extra = ((-1) ** k * q ** (k * (k - 1) // 2)) ** e if e >= 0 else (
            ((-1) ** k * q ** (k * (k - 1) // 2)) ** (-e)
        ).inverse()
        total = total + num / den * z**k * extra
    return total


# ---------------------------------------------------------------------------
# family entries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyEntry:
    key: str
    acronym: str
    name: str
    kls: int | None
    params: tuple[str, ...]
    build_spec: Callable[[dict], Any]
    label: DegreeTriple | BidegreeTriple
    kn_text: str
    node: str | None = None
    finite_param: str | None = None
    admissible: Callable[[dict], list[str]] = lambda p: []
    oracle: Callable[..., Scalar] | None = None
    standard_prefactor: Callable[[dict, int], Scalar] | None = None
    kn: Callable[[dict, int], Scalar] | None = None
    sampler: Callable[[random.Random], dict] | None = None
    defaults: dict = field(default_factory=dict)
    dual_defined: bool = True
    quadratic_grid: str | None = None
    is_q: bool = False

    def truncation(self, p: dict) -> int | None:
        if self.key == "racah":
            return _racah_N(p)
        if self.finite_param:
            return int(p[self.finite_param].re)
        return None


def _racah_N(p: dict) -> int:
    hits = []
    for expr in (p["alpha"] + 1, p["beta"] + p["delta"] + 1, p["gamma"] + 1):
        if expr.is_integer() and expr.re < 0:
            hits.append(int(-expr.re))
    if not hits:
        raise InadmissibleParameters("racah needs alpha+1, beta+delta+1 or gamma+1 = -N")
    if len(set(hits)) > 1:
        raise InadmissibleParameters(f"racah truncation ambiguous: N in {sorted(set(hits))}")
    return hits[0]


# q = 1 builders --------------------------------------------------------------


def _q1(h: Poly, x: Poly, g: Poly) -> SeqSpecQ1:
    return SeqSpecQ1.from_polys(h, x, g)


def _wilson(p):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    s = a + b + c + d
    return _q1(
        -_kk * (_kk + s - 1),
        -((_kk + a) ** 2),
        _kk * (_kk + a + b - 1) * (_kk + a + c - 1) * (_kk + a + d - 1),
    )


def _racah(p):
    al, be, ga, de = p["alpha"], p["beta"], p["gamma"], p["delta"]
    return _q1(
        _kk * (_kk + al + be + 1),
        _kk * (_kk + ga + de + 1),
        _kk * (_kk + al) * (_kk + be + de) * (_kk + ga),
    )


def _cdhahn(p):
    a, b, c = p["a"], p["b"], p["c"]
    return _q1(-_kk, -((_kk + a) ** 2), _kk * (_kk + a + b - 1) * (_kk + a + c - 1))


def _dhahn(p):
    ga, de, N = p["gamma"], p["delta"], p["N"]
    return _q1(-_kk, _kk * (_kk + ga + de + 1), _kk * (_kk + ga) * (-_kk + N + 1))


def _chahn(p):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    s = a + b + c + d
    return _q1(
        _kk * (_kk + s - 1),
        (_kk + a) * I,
        _kk * (_kk + a + c - 1) * (_kk + a + d - 1) * I,
    )


def _hahn(p):
    al, be, N = p["alpha"], p["beta"], p["N"]
    return _q1(_kk * (_kk + al + be + 1), _kk, _kk * (_kk + al) * (_kk - N - 1))


def _mpollaczek(p):
    lam, t = p["lam"], p["t"]
    return _q1((_kk + lam) * (-I * (1 - t)), (_kk + lam) * I, _kk * (_kk + 2 * lam - 1))


def _meixner(p):
    be, c = p["beta"], p["c"]
    return _q1(_kk * (1 - c.inverse()), _kk, _kk * (_kk + be - 1))


def _krawtchouk(p):
    pp, N = p["p"], p["N"]
    return _q1(_kk * pp.inverse(), _kk, _kk * (_kk - N - 1))


def _jacobi(p):
    al, be = p["alpha"], p["beta"]
    return _q1(_kk * (_kk + al + be + 1) * Fraction(1, 2), Poly.const(1, "k"), _kk * (_kk + al))


def _charlier(p):
    a = p["a"]
    return _q1(-_kk * a.inverse(), _kk, _kk)


def _laguerre(p):
    al = p["alpha"]
    return _q1(-_kk, Poly((), "k"), _kk * (_kk + al))


def _bessel(p):
    a = p["a"]
    return _q1(_kk * (_kk + a + 1) * Fraction(1, 2), Poly((), "k"), _kk)


def _binomial(p):
    return _q1(-_kk, Poly((), "k"), _kk)


# q = 1 oracles ---------------------------------------------------------------
#
# Each returns U_n(at).  Families on a quadratic grid accept ``y`` (the
# square-root variable) to sum with the two linear Pochhammer symbols;
# without it the paired product is used.


def _quad_pair(a, at):
    # (a+iy)_k (a-iy)_k with y^2 = at
    return lambda k: _prod((a + j) ** 2 + at for j in range(k))


def _racah_pair(e, at):
    # (-y)_k (y+e)_k with y(y+e) = at
    return lambda k: _prod(Scalar(j) * (e + j) - at for j in range(k))


def _prod(it):
    out = ONE
    for v in it:
        out = out * v
    return out


def _o_wilson(p, n, at, y=None):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    s = a + b + c + d
    if y is not None:
        return hyp_sum(n, [-n, n + s - 1, a + I * y, a - I * y], [a + b, a + c, a + d], 1)
    return hyp_sum(n, [-n, n + s - 1], [a + b, a + c, a + d], 1, [_quad_pair(a, at)])


def _o_racah(p, n, at, y=None):
    al, be, ga, de = p["alpha"], p["beta"], p["gamma"], p["delta"]
    e = ga + de + 1
    lower = [al + 1, be + de + 1, ga + 1]
    if y is not None:
        return hyp_sum(n, [-n, n + al + be + 1, -y, y + e], lower, 1)
    return hyp_sum(n, [-n, n + al + be + 1], lower, 1, [_racah_pair(e, at)])


def _o_cdhahn(p, n, at, y=None):
    a, b, c = p["a"], p["b"], p["c"]
    if y is not None:
        return hyp_sum(n, [-n, a + I * y, a - I * y], [a + b, a + c], 1)
    return hyp_sum(n, [-n], [a + b, a + c], 1, [_quad_pair(a, at)])


def _o_dhahn(p, n, at, y=None):
    ga, de, N = p["gamma"], p["delta"], p["N"]
    e = ga + de + 1
    if y is not None:
        return hyp_sum(n, [-n, -y, y + e], [ga + 1, -N], 1)
    return hyp_sum(n, [-n], [ga + 1, -N], 1, [_racah_pair(e, at)])


def _o_chahn(p, n, at, y=None):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    s = a + b + c + d
    return hyp_sum(n, [-n, n + s - 1, a + I * at], [a + c, a + d], 1)


def _o_hahn(p, n, at, y=None):
    al, be, N = p["alpha"], p["beta"], p["N"]
    return hyp_sum(n, [-n, n + al + be + 1, -at], [al + 1, -N], 1)


def _o_mpollaczek(p, n, at, y=None):
    lam, t = p["lam"], p["t"]
    return hyp_sum(n, [-n, lam + I * at], [2 * lam], 1 - t)


def _o_meixner(p, n, at, y=None):
    be, c = p["beta"], p["c"]
    return hyp_sum(n, [-n, -at], [be], 1 - c.inverse())


def _o_krawtchouk(p, n, at, y=None):
    return hyp_sum(n, [-n, -at], [-p["N"]], p["p"].inverse())


def _o_jacobi(p, n, at, y=None):
    al, be = p["alpha"], p["beta"]
    return hyp_sum(n, [-n, n + al + be + 1], [al + 1], (1 - at) / 2)


def _o_charlier(p, n, at, y=None):
    return hyp_sum(n, [-n, -at], [], -p["a"].inverse())


def _o_laguerre(p, n, at, y=None):
    return hyp_sum(n, [-n], [p["alpha"] + 1], at)


def _o_bessel(p, n, at, y=None):
    return hyp_sum(n, [-n, n + p["a"] + 1], [], -Scalar.coerce(at) / 2)


def _o_binomial(p, n, at, y=None):
    return hyp_sum(n, [-n], [], at)


def _ph(v, n):
    return pochhammer(v, n)


# standard normalizations: std_n = prefactor * U_n and u_n = std_n / k_n

_PREFACTORS: dict[str, Callable[[dict, int], Scalar]] = {
    "wilson": lambda p, n: _ph(p["a"] + p["b"], n) * _ph(p["a"] + p["c"], n) * _ph(p["a"] + p["d"], n),
    "racah": lambda p, n: ONE,
    "continuous_dual_hahn": lambda p, n: _ph(p["a"] + p["b"], n) * _ph(p["a"] + p["c"], n),
    "dual_hahn": lambda p, n: ONE,
    "continuous_hahn": lambda p, n: I**n * _ph(p["a"] + p["c"], n) * _ph(p["a"] + p["d"], n) / _factorial(n),
    "hahn": lambda p, n: ONE,
    "meixner": lambda p, n: ONE,
    "krawtchouk": lambda p, n: ONE,
    "jacobi": lambda p, n: _ph(p["alpha"] + 1, n) / _factorial(n),
    "charlier": lambda p, n: ONE,
    "laguerre": lambda p, n: _ph(p["alpha"] + 1, n) / _factorial(n),
    "bessel": lambda p, n: ONE,
    "binomial": lambda p, n: ONE,
}


def _s4(p):
    return p["a"] + p["b"] + p["c"] + p["d"]


_KN: dict[str, Callable[[dict, int], Scalar]] = {
    "wilson": lambda p, n: Scalar(-1) ** n * _ph(n + _s4(p) - 1, n),
    "racah": lambda p, n: _ph(n + p["alpha"] + p["beta"] + 1, n)
    / (_ph(p["alpha"] + 1, n) * _ph(p["beta"] + p["delta"] + 1, n) * _ph(p["gamma"] + 1, n)),
    "continuous_dual_hahn": lambda p, n: Scalar(-1) ** n,
    "dual_hahn": lambda p, n: (_ph(p["gamma"] + 1, n) * _ph(-p["N"], n)).inverse(),
    "continuous_hahn": lambda p, n: _ph(n + _s4(p) - 1, n) / _factorial(n),
    "hahn": lambda p, n: _ph(n + p["alpha"] + p["beta"] + 1, n) / (_ph(p["alpha"] + 1, n) * _ph(-p["N"], n)),
    "meixner": lambda p, n: (1 - p["c"].inverse()) ** n / _ph(p["beta"], n),
    "krawtchouk": lambda p, n: (p["p"] ** n * _ph(-p["N"], n)).inverse(),
    "jacobi": lambda p, n: _ph(n + p["alpha"] + p["beta"] + 1, n) / (2**n * _factorial(n)),
    "charlier": lambda p, n: (-p["a"]) ** (-n),
    "laguerre": lambda p, n: Scalar(-1) ** n / _factorial(n),
    "bessel": lambda p, n: _ph(n + p["a"] + 1, n) / 2**n,
    "binomial": lambda p, n: Scalar(-1) ** n,
}

_KN_TEXT = {
    "wilson": "(-1)^n (n+a+b+c+d-1)_n",
    "racah": "(n+alpha+beta+1)_n / ((alpha+1)_n (beta+delta+1)_n (gamma+1)_n)",
    "continuous_dual_hahn": "(-1)^n",
    "dual_hahn": "1 / ((gamma+1)_n (-N)_n)",
    "continuous_hahn": "(n+a+b+c+d-1)_n / n!",
    "hahn": "(n+alpha+beta+1)_n / ((alpha+1)_n (-N)_n)",
    "meixner_pollaczek": "2^n sin(phi)^n / n!",
    "meixner": "(1-1/c)^n / (beta)_n",
    "krawtchouk": "1 / (p^n (-N)_n)",
    "jacobi": "(n+alpha+beta+1)_n / (2^n n!)",
    "charlier": "(-a)^(-n)",
    "laguerre": "(-1)^n / n!",
    "bessel": "(n+a+1)_n / 2^n",
    "binomial": "(-1)^n",
}


# admissibility -----------------------------------------------------------------


def _adm_wilson(p):
    return ["a+b+c+d must not be an integer <= 0"] if _nonpos_int(_s4(p)) else []


def _adm_racah(p):
    try:
        _racah_N(p)
    except InadmissibleParameters as e:
        return [str(e)]
    return []


def _adm_N(p):
    return [] if _positive_int(p["N"]) else ["N must be a positive integer"]


def _adm_meixner(p):
    return ["c must differ from 0 and 1"] if p["c"] in (ZERO, ONE) else []


def _adm_krawtchouk(p):
    bad = _adm_N(p)
    if not p["p"]:
        bad.append("p must be nonzero")
    return bad


def _adm_mp(p):
    return ["t = e^(-2i phi) must differ from 0 and 1"] if p["t"] in (ZERO, ONE) else []


def _adm_charlier(p):
    return [] if p["a"] else ["a must be nonzero"]


# samplers ------------------------------------------------------------------------


def _ri(rng: random.Random, lo: int = 1, hi: int = 6) -> Scalar:
    return Scalar(rng.randint(lo, hi))


def _nonzero(rng: random.Random, lo: int, hi: int, avoid=(0,)) -> Scalar:
    while True:
        v = rng.randint(lo, hi)
        if v not in avoid:
            return Scalar(v)


def _sample_racah(rng):
    N = rng.randint(3, 7)
    which = rng.choice(("alpha", "bd", "gamma"))
    p = {"alpha": _ri(rng), "beta": _ri(rng), "gamma": _ri(rng), "delta": _ri(rng, 1, 4)}
    if which == "alpha":
        p["alpha"] = Scalar(-N - 1)
        p["beta"] = Scalar(N + rng.randint(1, 6))
    elif which == "gamma":
        p["gamma"] = Scalar(-N - 1)
        p["delta"] = Scalar(2 * N + rng.randint(1, 6))
    else:
        p["delta"] = Scalar(-N - 1 - rng.randint(1, 3))
        p["beta"] = -p["delta"] - N - 1
        p["gamma"] = Scalar(rng.randint(1, 6)) - p["delta"]
    return p


_SAMPLERS: dict[str, Callable[[random.Random], dict]] = {
    "wilson": lambda r: {k: _ri(r) for k in "abcd"},
    "racah": _sample_racah,
    "continuous_dual_hahn": lambda r: {k: _ri(r) for k in "abc"},
    "dual_hahn": lambda r: {"gamma": _ri(r), "delta": _ri(r), "N": _ri(r, 3, 7)},
    "continuous_hahn": lambda r: {k: _ri(r) for k in "abcd"},
    "hahn": lambda r: {"alpha": _ri(r), "beta": _ri(r), "N": _ri(r, 3, 7)},
    "meixner_pollaczek": lambda r: {"lam": _ri(r), "t": _nonzero(r, -4, 5, (0, 1))},
    "meixner": lambda r: {"beta": _ri(r), "c": _nonzero(r, -4, 5, (0, 1))},
    "krawtchouk": lambda r: {"p": _nonzero(r, -4, 5), "N": _ri(r, 3, 7)},
    "jacobi": lambda r: {"alpha": _ri(r, 1, 6), "beta": _ri(r, 0, 6)},
    "charlier": lambda r: {"a": _nonzero(r, -5, 5)},
    "laguerre": lambda r: {"alpha": _ri(r, 1, 6)},
    "bessel": lambda r: {"a": _ri(r, 0, 6)},
    "binomial": lambda r: {},
}


# q-family builders -----------------------------------------------------------
#
# Written with plain arithmetic so that q and the parameters may be Scalars
# or rational functions of s.


def _laurent(scale, shift: int, factors) -> dict[int, Any]:
    """Expand ``scale * Q^shift * prod (c0 + c1 Q)`` into ``{power: coefficient}``."""
    poly: dict[int, Any] = {0: scale}
    for c0, c1 in factors:
        nxt: dict[int, Any] = {}
        for e, v in poly.items():
            nxt[e] = nxt.get(e, ZERO) + v * c0
            nxt[e + 1] = nxt.get(e + 1, ZERO) + v * c1
        poly = nxt
    return {e + shift: v for e, v in poly.items()}


def _qspec(h: dict, x: dict, g: dict, q) -> SeqSpecQ:
    z = ZERO
    return SeqSpecQ(
        h.get(-1, z), h.get(0, z), h.get(1, z),
        x.get(-1, z), x.get(0, z), x.get(1, z),
        g.get(-2, z), g.get(-1, z), g.get(0, z), g.get(1, z), g.get(2, z),
        q,
    )


def askey_wilson_spec(a, b, c, d, q) -> SeqSpecQ:
    abcd = a * b * c * d
    return _qspec(
        _laurent(ONE, -1, [(ONE, -ONE), (ONE, -abcd / q)]),
        {1: a, -1: 1 / a},
        _laurent(q / a, -2, [(ONE, -a * b / q), (ONE, -a * c / q), (ONE, -a * d / q), (ONE, -ONE)]),
        q,
    )


def al_salam_chihara_spec(a, b, q) -> SeqSpecQ:
    return _qspec(
        {-1: ONE, 0: -ONE},
        {1: a, -1: 1 / a},
        _laurent(q / a, -2, [(ONE, -a * b / q), (ONE, -ONE)]),
        q,
    )


def al_salam_carlitz1_spec(a, q) -> SeqSpecQ:
    inv = 1 / a
    return _qspec({0: -inv, -1: inv}, {1: ONE}, {0: ONE, -1: -ONE}, q)


def stieltjes_wigert_spec(q) -> SeqSpecQ:
    r = 1 / (1 - q)
    return _qspec({0: -r, 1: r}, {}, {0: -r, -1: r}, q)


def _qo_aw(p, n, at, z=None):
    a, b, c, d, q = p["a"], p["b"], p["c"], p["d"], p["q"]
    abcd = a * b * c * d
    upper = [q ** (-n), q ** (n - 1) * abcd]
    lower = [a * b, a * c, a * d]
    if z is not None:
        return qhyp_sum(n, upper + [a * z, a / z], lower, q, q)
    return qhyp_sum(n, upper, lower, q, q, [_qpair(a, q, at)])


def _qpair(a, q, at):
    # (az, a/z; q)_k with z + 1/z = at
    return lambda k: _prod(1 - a * q**j * at + a * a * q ** (2 * j) for j in range(k))


def _qo_asc(p, n, at, z=None):
    a, b, q = p["a"], p["b"], p["q"]
    # the lower parameter 0 contributes (0; q)_k = 1
    if z is not None:
        return qhyp_sum(n, [q ** (-n), a * z, a / z], [a * b, ZERO], q, q)
    return qhyp_sum(n, [q ** (-n)], [a * b, ZERO], q, q, [_qpair(a, q, at)])


def _qo_asc1(p, n, at, z=None):
    a, q = p["a"], p["q"]
    at = Scalar.coerce(at)
    return qhyp_sum(n, [q ** (-n), at.inverse()], [ZERO], q, q * at / a)


def _qo_sw(p, n, at, z=None):
    q = p["q"]
    return qhyp_sum(n, [q ** (-n)], [ZERO], q, -(q ** (n + 1)) * at)


def _adm_q(p):
    bad = []
    q = p.get("q")
    if q is not None and (not q or q == ONE):
        bad.append("q must differ from 0 and 1")
    for k in ("a", "b", "c", "d"):
        if k in p and not p[k]:
            bad.append(f"{k} must be nonzero")
    return bad


def _q_sampler(names):
    def sample(rng):
        p = {k: _nonzero(rng, -4, 5, (0, 1, -1)) for k in names}
        p["q"] = rng.choice([Scalar(2), Scalar(3), Scalar(Fraction(1, 2))])
        return p

    return sample


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def _entry(key, acr, name, kls, params, builder, label, node, oracle, *, finite=None,
           adm=None, defaults=None, dual=True, quad=None):
    return FamilyEntry(
        key=key, acronym=acr, name=name, kls=kls, params=params, build_spec=builder,
        label=DegreeTriple(*label), kn_text=_KN_TEXT[key], node=node, finite_param=finite,
        admissible=adm or (lambda p: []), oracle=oracle,
        standard_prefactor=_PREFACTORS.get(key), kn=_KN.get(key), sampler=_SAMPLERS[key],
        defaults=defaults or {}, dual_defined=dual, quadratic_grid=quad,
    )


def _S(**kw) -> dict:
    return {k: Scalar.coerce(v) for k, v in kw.items()}


FAMILIES: dict[str, FamilyEntry] = {
    e.key: e
    for e in (
        _entry("wilson", "W", "Wilson", 1, ("a", "b", "c", "d"), _wilson, (2, 4, 2), "W/R",
               _o_wilson, adm=_adm_wilson, defaults=_S(a=1, b=2, c=3, d=4), quad="wilson"),
        _entry("racah", "R", "Racah", 2, ("alpha", "beta", "gamma", "delta"), _racah, (2, 4, 2),
               "W/R", _o_racah, adm=_adm_racah,
               defaults=_S(alpha=-6, beta=6, gamma=1, delta=1), quad="racah"),
        _entry("continuous_dual_hahn", "cdH", "continuous dual Hahn", 3, ("a", "b", "c"),
               _cdhahn, (2, 3, 1), "cdH/dH", _o_cdhahn, defaults=_S(a=1, b=2, c=3), quad="wilson"),
        _entry("dual_hahn", "dH", "dual Hahn", 6, ("gamma", "delta", "N"), _dhahn, (2, 3, 1),
               "cdH/dH", _o_dhahn, finite="N", adm=_adm_N, defaults=_S(gamma=1, delta=2, N=5),
               quad="racah"),
        _entry("continuous_hahn", "cH", "continuous Hahn", 4, ("a", "b", "c", "d"), _chahn,
               (1, 3, 2), "cH/H", _o_chahn, defaults=_S(a=1, b=2, c=3, d=4)),
        _entry("hahn", "H", "Hahn", 5, ("alpha", "beta", "N"), _hahn, (1, 3, 2), "cH/H",
               _o_hahn, finite="N", adm=_adm_N, defaults=_S(alpha=1, beta=1, N=5)),
        _entry("meixner_pollaczek", "M-P", "Meixner-Pollaczek", 7, ("lam", "t"), _mpollaczek,
               (1, 2, 1), "M-P/M/K", _o_mpollaczek, adm=_adm_mp, defaults=_S(lam=1, t=2)),
        _entry("meixner", "M", "Meixner", 10, ("beta", "c"), _meixner, (1, 2, 1), "M-P/M/K",
               _o_meixner, adm=_adm_meixner, defaults=_S(beta=2, c=3)),
        _entry("krawtchouk", "K", "Krawtchouk", 11, ("p", "N"), _krawtchouk, (1, 2, 1),
               "M-P/M/K", _o_krawtchouk, finite="N", adm=_adm_krawtchouk,
               defaults=_S(p="1/3", N=5)),
        _entry("jacobi", "J", "Jacobi", 8, ("alpha", "beta"), _jacobi, (0, 2, 2), "J",
               _o_jacobi, defaults=_S(alpha=1, beta=2), dual=False),
        _entry("charlier", "Ch", "Charlier", 14, ("a",), _charlier, (1, 1, 1), "Ch",
               _o_charlier, adm=_adm_charlier, defaults=_S(a=1)),
        _entry("laguerre", "L", "Laguerre", 12, ("alpha",), _laguerre, (0, 2, 1), "L",
               _o_laguerre, defaults=_S(alpha=2), dual=False),
        _entry("bessel", "B", "Bessel", 13, ("a",), _bessel, (0, 1, 2), "B", _o_bessel,
               defaults=_S(a=1), dual=False),
        _entry("binomial", "bin", "binomial", None, (), _binomial, (0, 1, 1), "bin",
               _o_binomial, dual=False),
    )
}

Q_FAMILIES: dict[str, FamilyEntry] = {
    e.key: e
    for e in (
        FamilyEntry("askey_wilson", "AW", "Askey-Wilson", None, ("a", "b", "c", "d", "q"),
                    lambda p: askey_wilson_spec(p["a"], p["b"], p["c"], p["d"], p["q"]),
                    BidegreeTriple((-1, 1), (-2, 2), (-1, 1)), "(ab,ac,ad;q)_n / (a^n (q^(n-1)abcd;q)_n)",
                    admissible=_adm_q, oracle=_qo_aw, sampler=_q_sampler("abcd"),
                    defaults=_S(a=2, b=3, c=5, d=7, q=2), is_q=True),
        FamilyEntry("al_salam_chihara", "ASC", "Al-Salam-Chihara", None, ("a", "b", "q"),
                    lambda p: al_salam_chihara_spec(p["a"], p["b"], p["q"]),
                    BidegreeTriple((-1, 1), (-2, 0), (-1, 0)), "(ab;q)_n / a^n",
                    admissible=_adm_q, oracle=_qo_asc, sampler=_q_sampler("ab"),
                    defaults=_S(a=2, b=3, q=2), is_q=True),
        FamilyEntry("al_salam_carlitz1", "ASCI", "Al-Salam-Carlitz I", None, ("a", "q"),
                    lambda p: al_salam_carlitz1_spec(p["a"], p["q"]),
                    BidegreeTriple((0, 1), (-1, 0), (-1, 0)), "(-a)^n q^(n(n-1)/2)",
                    admissible=_adm_q, oracle=_qo_asc1, sampler=_q_sampler("a"),
                    defaults=_S(a=2, q=3), is_q=True),
        FamilyEntry("stieltjes_wigert", "SW", "q-Stieltjes-Wigert", None, ("q",),
                    lambda p: stieltjes_wigert_spec(p["q"]),
                    BidegreeTriple((0, 0), (-1, 0), (0, 1)), "1",
                    admissible=_adm_q, oracle=_qo_sw, sampler=_q_sampler(""),
                    defaults=_S(q=2), dual_defined=False, is_q=True),
    )
}

ALIASES = {
    "w": "wilson", "r": "racah", "cdh": "continuous_dual_hahn", "dh": "dual_hahn",
    "ch": "charlier", "h": "hahn", "mp": "meixner_pollaczek", "m-p": "meixner_pollaczek",
    "m": "meixner", "k": "krawtchouk", "j": "jacobi", "l": "laguerre", "b": "bessel",
    "bin": "binomial", "aw": "askey_wilson", "asc": "al_salam_chihara",
    "asc1": "al_salam_carlitz1", "sw": "stieltjes_wigert",
    "continuous-hahn": "continuous_hahn",
}
# "ch" is Charlier; continuous Hahn goes by its full name.


def family(name: str) -> FamilyEntry:
    key = name.strip().lower().replace("-", "_").replace(" ", "_")
    key = ALIASES.get(name.strip().lower(), ALIASES.get(key, key))
    if key in FAMILIES:
        return FAMILIES[key]
    if key in Q_FAMILIES:
        return Q_FAMILIES[key]
    raise UnknownFamily(name)


def normalize_params(entry: FamilyEntry, params: Params | None) -> dict[str, Scalar]:
    raw = dict(entry.defaults)
    for k, v in (params or {}).items():
        k = GREEK.get(k, k)
        if k not in entry.params:
            raise InadmissibleParameters(f"{entry.key} has no parameter {k!r}")
        raw[k] = v if not isinstance(v, (int, str, Fraction)) else Scalar.coerce(v)
    missing = [k for k in entry.params if k not in raw]
    if missing:
        raise InadmissibleParameters(f"{entry.key} needs parameters {missing}")
    return raw


@dataclass(frozen=True)
class BuiltFamily:
    entry: FamilyEntry
    params: dict
    spec: SeqSpecQ1 | SeqSpecQ
    triple: TripleData
    N: int | None


def build_family(name: str, params: Params | None = None, K: int | None = None) -> BuiltFamily:
    """Spec and evaluated triple for a catalog family.

    Depth defaults to 12, or ``N + 1`` for finite families.
    """
    entry = family(name)
    p = normalize_params(entry, params)
    bad = entry.admissible(p)
    if bad:
        raise InadmissibleParameters("; ".join(bad))
    N = entry.truncation(p)
    if K is None:
        K = 12 if N is None else N + 1
    try:
        spec = entry.build_spec(p)
        triple = spec.to_triple(K)
    except (InvalidSpec, HCollision, ZeroDivisionError) as e:
        raise InadmissibleParameters(f"{type(e).__name__}: {e}") from None
    top = K if N is None else min(N, K)
    for k in range(1, top + 1):
        if not triple.g[k]:
            raise InadmissibleParameters(f"g_{k} = 0 inside the family range")
    if N is not None and N + 1 <= K and triple.g[N + 1]:
        raise InadmissibleParameters(f"g_{N + 1} should vanish for N = {N}")
    return BuiltFamily(entry, p, spec, triple, N)


def sample_family(name: str, rng: random.Random, *, need_dual: bool = False, tries: int = 200):
    """Random admissible integer parameter point."""
    entry = family(name)
    for _ in range(tries):
        p = entry.sampler(rng)
        try:
            built = build_family(name, p)
        except InadmissibleParameters:
            continue
        if need_dual and entry.dual_defined:
            try:
                dualize(built.triple)
            except DualNotDefined:
                continue
        return built
    raise RuntimeError(f"could not sample admissible parameters for {name}")


def kls_oracle(name: str, params: Params | None, n: int, at, **kw) -> Scalar:
    """Standard terminating-series form of ``U_n`` at ``at``."""
    entry = family(name)
    if entry.oracle is None:
        raise OracleUnavailable(name)
    p = normalize_params(entry, params)
    return entry.oracle(p, n, Scalar.coerce(at), **kw)


def standard_value(name: str, params: Params | None, n: int, at, **kw) -> Scalar:
    """Family polynomial in its usual normalization, evaluated at ``at``."""
    entry = family(name)
    if entry.standard_prefactor is None:
        raise OracleUnavailable(f"{name}: normalization is not rational")
    p = normalize_params(entry, params)
    return entry.standard_prefactor(p, n) * kls_oracle(name, p, n, at, **kw)


def normalization_kn(name: str, params: Params | None, n: int) -> Scalar:
    entry = family(name)
    if entry.kn is None:
        raise OracleUnavailable(f"{name}: k_n is not rational")
    return entry.kn(normalize_params(entry, params), n)


def oracle_points(built: BuiltFamily) -> list[tuple[Scalar, dict]]:
    """Evaluation points ``(at, extra)``; quadratic grids get square-root forms."""
    entry = built.entry
    p = built.params
    pts: list[tuple[Scalar, dict]] = [
        (Scalar(3), {}),
        (Scalar(Fraction(-5, 2)), {}),
        (Scalar(Fraction(1, 3), 2), {}),
    ]
    if entry.quadratic_grid == "wilson":
        for y in (Scalar(2), Scalar(Fraction(1, 2), 1), I):
            pts.append((y * y, {"y": y}))
    elif entry.quadratic_grid == "racah":
        e = p["gamma"] + p["delta"] + 1
        for y in (Scalar(2), Scalar(Fraction(-1, 3)), Scalar(1, 1)):
            pts.append((y * (y + e), {"y": y}))
    elif entry.is_q and entry.key in ("askey_wilson", "al_salam_chihara"):
        for z in (Scalar(3), Scalar(Fraction(1, 2), 1)):
            pts.append((z + z.inverse(), {"z": z}))
    if entry.key == "al_salam_carlitz1":
        pts = [(a, k) for a, k in pts if a]
    return pts


# ---------------------------------------------------------------------------
# verification battery
# ---------------------------------------------------------------------------


def _cap(triple: TripleData, n_max: int) -> int:
    return min(n_max, triple.max_degree())


def verify_triple(
    t: TripleData,
    n_max: int,
    report: Report | None = None,
    *,
    expect_dual: bool | None = None,
) -> Report:
    """Eigen, monicity, recurrence, hypergeometric and duality checks on a triple."""
    r = report if report is not None else Report()
    cap = _cap(t, n_max)

    try:
        bad = [n for n in range(cap + 1) if not (monic_u(t, n).is_monic() and monic_u(t, n).degree == n)]
        r.add("monic", not bad, f"n <= {cap}" if not bad else f"not monic at n={bad}")
    except Exception as e:  # noqa: BLE001 - battery records, never aborts
        r.error("monic", e)

    try:
        bad = [n for n in range(cap + 1) if not verify_eigen(t, n)]
        r.add("eigen", not bad, f"n <= {cap}" if not bad else f"L u_n != h_n u_n at n={bad}")
    except Exception as e:  # noqa: BLE001
        r.error("eigen", e)

    top = min(cap, t.K - 2)
    try:
        fails = []
        for n in range(1, top + 1):
            res = ttrr_residual(t, n)
            if not res.is_zero():
                fails.append((n, res))
        if fails:
            n, res = fails[0]
            r.add("ttrr", False, f"nonzero residual at n={n}: {res}")
        else:
            r.add("ttrr", True, f"1 <= n <= {top}")
    except Exception as e:  # noqa: BLE001
        r.error("ttrr", e)

    try:
        pts = [Scalar(2), Scalar(Fraction(-7, 3)), Scalar(1, 1)]
        ok = all(
            hypergeometric_U(t, n, z) / hypergeometric_factor(t, n) == monic_u(t, n)(z)
            for n in range(cap + 1)
            for z in pts
        )
        r.add("hypergeometric_form", ok, f"n <= {cap}")
    except Exception as e:  # noqa: BLE001
        r.error("hypergeometric_form", e)

    try:
        dualize(t)
    except DualNotDefined as e:
        if expect_dual is False:
            r.add("duality", True, f"DualNotDefined ({e})")
        elif expect_dual is None:
            r.add("duality", True, f"not applicable: DualNotDefined ({e})")
        else:
            r.add("duality", True, f"DualNotDefined for these parameters ({e})")
    except HCollision as e:
        r.add("duality", True, f"DualNotDefined for these parameters ({e})")
    else:
        if expect_dual is False:
            r.add("duality", False, "expected DualNotDefined, but x-values are distinct")
        else:
            try:
                m_cap = min(6, cap)
                bad = [
                    (n, m)
                    for n in range(m_cap + 1)
                    for m in range(m_cap + 1)
                    if not dual_identity_check(t, n, m)
                ]
                r.add("duality", not bad, f"0 <= n,m <= {m_cap}" if not bad else f"fails at {bad[:3]}")
            except Exception as e:  # noqa: BLE001
                r.error("duality", e)
    return r


def verify_family(
    name: str,
    params: Params | None = None,
    n_max: int = 8,
    *,
    perturb: str | None = None,
) -> Report:
    """Full battery for one catalog instance; errors go into the report."""
    r = Report()
    try:
        built = build_family(name, params)
    except (InadmissibleParameters, UnknownFamily) as e:
        r.error("build", e)
        return r
    entry = built.entry
    spec = built.spec
    detail = ", ".join(f"{k}={v}" for k, v in built.params.items())
    if built.N is not None:
        detail += f"; finite system truncates at N={built.N}"
    r.add("build", True, detail)

    if perturb:
        if entry.is_q:
            r.error("perturb", "perturbation is only supported for q=1 specs")
            return r
        try:
            spec = spec.with_coeff(perturb, getattr(spec, perturb) + 1)
            t = spec.to_triple(built.triple.K)
        except Exception as e:  # noqa: BLE001
            r.error("perturb", e)
            return r
        r.add("perturb", True, f"{perturb} -> {getattr(spec, perturb)}")
    else:
        t = built.triple

    if entry.is_q:
        ok = check_q_constraints(spec)
        r.add("constraints", ok, "d2 = a1 b1 / q, d-2 = q a-1 b-1")
        try:
            b = bidegree_triple(spec)
            r.add("bidegree_triple", b == entry.label, f"{b} (label {entry.label})")
        except Exception as e:  # noqa: BLE001
            r.error("bidegree_triple", e)
    else:
        viol = q1_constraint_report(spec)
        r.add(
            "constraints",
            not viol,
            "d3, d4 as required" if not viol
            else "; ".join(f"{n} = {a}, required {b}" for n, a, b in viol),
        )
        try:
            dt = degree_triple(spec)
            r.add("degree_triple", dt == entry.label, f"{dt} (label {entry.label})")
        except Exception as e:  # noqa: BLE001
            r.error("degree_triple", e)
        try:
            node = classify_spec(spec)
            r.add("classify", node == entry.node, f"node={node}")
        except Exception as e:  # noqa: BLE001
            r.error("classify", e)

    verify_triple(t, n_max, r, expect_dual=entry.dual_defined)

    if built.N is not None:
        N = built.N
        ok = not t.g[N + 1] and all(t.g[k] for k in range(1, N + 1))
        r.add("truncation", ok, f"g_{N + 1} = 0, g_1..g_{N} nonzero")

    cap = min(6, _cap(t, n_max))
    if entry.oracle is not None and not perturb:
        try:
            bad = []
            for n in range(cap + 1):
                for at, kw in oracle_points(built):
                    if hypergeometric_U(t, n, at) != entry.oracle(built.params, n, at, **kw):
                        bad.append((n, str(at)))
            r.add("oracle", not bad, f"n <= {cap}" if not bad else f"mismatch at {bad[:3]}")
        except Exception as e:  # noqa: BLE001
            r.error("oracle", e)
    if entry.kn is not None and not perturb:
        try:
            bad = []
            for n in range(cap + 1):
                kn = entry.kn(built.params, n)
                for at, kw in oracle_points(built):
                    std = entry.standard_prefactor(built.params, n) * entry.oracle(built.params, n, at, **kw)
                    if kn * monic_u(t, n)(at) != std:
                        bad.append((n, str(at)))
            r.add("normalization", not bad, f"k_n = {entry.kn_text}" if not bad else f"mismatch at {bad[:3]}")
        except Exception as e:  # noqa: BLE001
            r.error("normalization", e)
    return r


def catalog_names(include_q: bool = False) -> list[str]:
    names = list(FAMILIES)
    if include_q:
        names += list(Q_FAMILIES)
    return names
