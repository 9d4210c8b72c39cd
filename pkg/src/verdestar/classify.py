"""Coefficient forms of data triples, their constraints, and the scheme.

Two parametrizations are supported:

* :class:`SeqSpecQ1` -- ``h_k, x_k`` quadratic and ``g_k`` quartic in ``k``.
* :class:`SeqSpecQ` -- Laurent polynomials in ``q**k`` (``h, x`` of width 3,
  ``g`` of width 5).

A q=1 spec is placed on a node of the nine-box scheme by its degree
triple ``(deg x, deg g, deg h)``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any, Iterator

from .exactnum import ONE, ZERO, Number, Poly, Scalar
from .spectral import TripleData


class RuleViolation(ValueError):
    pass


class NotNormalizable(ValueError):
    pass


class NoMatch(LookupError):
    pass


class ZeroDenominatorInProduct(ZeroDivisionError):
    pass


class InvalidSpec(ValueError):
    pass


# ---------------------------------------------------------------------------
# q = 1 coefficient form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeqSpecQ1:
    """``h_k = a0 + a1 k + a2 k^2``, ``x_k = b0 + b1 k + b2 k^2``,
    ``g_k = d1 k + d2 k^2 + d3 k^3 + d4 k^4``."""

    a0: Scalar = ZERO
    a1: Scalar = ZERO
    a2: Scalar = ZERO
    b0: Scalar = ZERO
    b1: Scalar = ZERO
    b2: Scalar = ZERO
    d1: Scalar = ZERO
    d2: Scalar = ZERO
    d3: Scalar = ZERO
    d4: Scalar = ZERO

    def __post_init__(self) -> None:
        for f in fields(self):
            object.__setattr__(self, f.name, Scalar.coerce(getattr(self, f.name)))
        if not self.a1 and not self.a2:
            raise InvalidSpec("h_k is constant: a1 and a2 both vanish")
        if not any((self.d1, self.d2, self.d3, self.d4)):
            raise InvalidSpec("g_k vanishes identically")

    @classmethod
    def from_polys(cls, h: Poly, x: Poly, g: Poly) -> SeqSpecQ1:
        """Read coefficients off polynomials in ``k``."""
        if h.degree > 2 or x.degree > 2 or g.degree > 4:
            raise InvalidSpec("degrees exceed (2, 2, 4)")
        if g.coeff(0):
            raise InvalidSpec("g_0 must vanish")
        return cls(
            h.coeff(0), h.coeff(1), h.coeff(2),
            x.coeff(0), x.coeff(1), x.coeff(2),
            g.coeff(1), g.coeff(2), g.coeff(3), g.coeff(4),
        )

    def as_dict(self) -> dict[str, Scalar]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def h(self, k: int) -> Scalar:
        return self.a0 + self.a1 * k + self.a2 * (k * k)

    def x(self, k: int) -> Scalar:
        return self.b0 + self.b1 * k + self.b2 * (k * k)

    def g(self, k: int) -> Scalar:
        return self.d1 * k + self.d2 * k**2 + self.d3 * k**3 + self.d4 * k**4

    def to_triple(self, K: int = 12) -> TripleData:
        return TripleData.from_functions(self.h, self.x, self.g, K)

    def with_coeff(self, name: str, value: Number) -> SeqSpecQ1:
        return replace(self, **{name: Scalar.coerce(value)})


def check_q1_constraints(s: SeqSpecQ1) -> bool:
    return s.d3 == s.a1 * s.b2 + s.a2 * s.b1 - 2 * s.a2 * s.b2 and s.d4 == s.a2 * s.b2


def q1_constraint_report(s: SeqSpecQ1) -> list[tuple[str, Scalar, Scalar]]:
    """``(name, actual, required)`` for each violated equality."""
    out = []
    need3 = s.a1 * s.b2 + s.a2 * s.b1 - 2 * s.a2 * s.b2
    need4 = s.a2 * s.b2
    if s.d3 != need3:
        out.append(("d3", s.d3, need3))
    if s.d4 != need4:
        out.append(("d4", s.d4, need4))
    return out


# ---------------------------------------------------------------------------
# general q coefficient form
# ---------------------------------------------------------------------------

Q_FIELDS = ("am1", "a0", "a1", "bm1", "b0", "b1", "dm2", "dm1", "d0", "d1", "d2")


@dataclass(frozen=True)
class SeqSpecQ:
    """Laurent form in ``Q = q**k``.

    Coefficients may be Scalars or any field elements supporting ``+ - * /``
    and integer powers (the limit engine passes rational functions of ``s``).
    """

    am1: Any
    a0: Any
    a1: Any
    bm1: Any
    b0: Any
    b1: Any
    dm2: Any
    dm1: Any
    d0: Any
    d1: Any
    d2: Any
    q: Any

    def __post_init__(self) -> None:
        for name in Q_FIELDS + ("q",):
            v = getattr(self, name)
            if isinstance(v, (int, str)) or type(v).__name__ == "Fraction":
                object.__setattr__(self, name, Scalar.coerce(v))
        if not self.q:
            raise InvalidSpec("q must be nonzero")
        ds = (self.dm2, self.dm1, self.d0, self.d1, self.d2)
        if not any(bool(d) for d in ds):
            raise InvalidSpec("g_k vanishes identically")
        if bool(self.dm2 + self.dm1 + self.d0 + self.d1 + self.d2):
            raise InvalidSpec("g coefficients must sum to zero (g_0 = 0)")

    def coeffs(self) -> dict[str, Any]:
        return {n: getattr(self, n) for n in Q_FIELDS}

    def _Q(self, k: int):
        return self.q**k

    def h(self, k: int):
        Q = self._Q(k)
        return self.am1 / Q + self.a0 + self.a1 * Q

    def x(self, k: int):
        Q = self._Q(k)
        return self.bm1 / Q + self.b0 + self.b1 * Q

    def g(self, k: int):
        Q = self._Q(k)
        return self.dm2 / (Q * Q) + self.dm1 / Q + self.d0 + self.d1 * Q + self.d2 * Q * Q

    def xi(self):
        return 1 + self.q + 1 / self.q

    def to_triple(self, K: int = 12) -> TripleData:
        q = Scalar.coerce(self.q)
        p = ONE
        for j in range(1, K + 1):
            p = p * q
            if p == ONE:
                raise InvalidSpec(f"q is a root of unity of order {j}")
        return TripleData.from_functions(self.h, self.x, self.g, K)


def check_q_constraints(s: SeqSpecQ) -> bool:
    return (
        s.d2 == s.a1 * s.b1 / s.q
        and s.dm2 == s.q * s.am1 * s.bm1
        and not bool(s.dm2 + s.dm1 + s.d0 + s.d1 + s.d2)
    )


# ---------------------------------------------------------------------------
# constraints of the three-term recurrence theorem
# ---------------------------------------------------------------------------


def general_constraints(h0, h1, h2, x0, x1, x2, g1, g2, xi):
    """The unique ``(g3, g4)`` for which ``u_n`` obeys a three-term recurrence."""
    X1, X2 = x1 - x0, x2 - x0
    H1, H2 = h1 - h0, h2 - h0
    g3 = xi * (X2 * H2 - X1 * H2 - X2 * H1 + g2 - g1)
    g4 = xi * (xi - 1) * ((xi + 1) * (X1 * H1 - X1 * H2 - X2 * H1) + xi * X2 * H2 + g2) + (
        1 - xi * xi
    ) * g1
    return g3, g4


def _order3_ok(seq, xi, ks) -> bool:
    return all(seq[k + 3] - seq[k] == xi * (seq[k + 2] - seq[k + 1]) for k in ks)


def _order5_ok(g, xi, ks) -> bool:
    c = xi * xi - xi - 1
    return all(
        g[k + 5] - g[k] == c * (g[k + 4] - g[k + 1] - (xi - 1) * (g[k + 3] - g[k + 2])) for k in ks
    )


def verify_difference_eqs(t: TripleData, xi: Number, K: int | None = None) -> bool:
    """Order-3 relations for ``h, x`` and the order-5 relation for ``g`` (``g_0 = 0``)."""
    K = t.K if K is None else min(K, t.K)
    if K < 5:
        raise ValueError("need depth K >= 5")
    xi = Scalar.coerce(xi)
    return (
        not t.g[0]
        and _order3_ok(t.h, xi, range(K - 2))
        and _order3_ok(t.x, xi, range(K - 2))
        and _order5_ok(t.g, xi, range(K - 4))
    )


def d_sequence(t: TripleData) -> list[Scalar]:
    """``d_k = g_k - x_{k-1}(h_k - h_0)``, with ``d_0 = 0``."""
    return [ZERO] + [t.g[k] - t.x[k - 1] * (t.h[k] - t.h[0]) for k in range(1, t.K + 1)]


def verify_d_remark(t: TripleData, xi: Number, K: int | None = None) -> bool:
    """Order-3 relation for ``d_k`` (``d_0 = 0`` holds by construction)."""
    K = t.K if K is None else min(K, t.K)
    if K < 5:
        raise ValueError("need depth K >= 5")
    d = d_sequence(t)
    return _order3_ok(d, Scalar.coerce(xi), range(K - 2))


# ---------------------------------------------------------------------------
# degree and bidegree triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class DegreeTriple:
    dx: int
    dg: int
    dh: int

    def __post_init__(self) -> None:
        if self.dx not in (0, 1, 2) or self.dg not in (1, 2, 3, 4) or self.dh not in (1, 2):
            raise RuleViolation(f"degrees out of range: {self}")
        if self.dx + self.dh >= 3:
            if self.dg != self.dx + self.dh:
                raise RuleViolation(f"deg g must equal deg x + deg h in {self}")
        elif self.dg > 2:
            raise RuleViolation(f"deg g must be <= 2 in {self}")

    def __str__(self) -> str:
        return f"({self.dx},{self.dg},{self.dh})"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.dx, self.dg, self.dh)

    def reversed(self) -> DegreeTriple:
        return DegreeTriple(self.dh, self.dg, self.dx)


def _top(*coeffs: Scalar) -> int:
    top = 0
    for i, c in enumerate(coeffs, start=1):
        if c:
            top = i
    return top


def degree_triple(s: SeqSpecQ1) -> DegreeTriple:
    return DegreeTriple(
        _top(s.b1, s.b2),
        _top(s.d1, s.d2, s.d3, s.d4),
        _top(s.a1, s.a2),
    )


@dataclass(frozen=True)
class BidegreeTriple:
    x: tuple[int, int]
    g: tuple[int, int]
    h: tuple[int, int]

    def __post_init__(self) -> None:
        xm, xp = self.x
        gm, gp = self.g
        hm, hp = self.h
        ok = (
            xp in (0, 1)
            and hp in (0, 1)
            and xm in (-1, 0)
            and hm in (-1, 0)
            and hm < hp
            and -2 <= gm < gp <= 2
        )
        if not ok:
            raise RuleViolation(f"invalid bidegree triple {self}")

    def __str__(self) -> str:
        return f"({self.x[0]},{self.x[1]};{self.g[0]},{self.g[1]};{self.h[0]},{self.h[1]})"

    def as_tuple(self) -> tuple[int, ...]:
        return self.x + self.g + self.h

    def to_degree(self) -> tuple[int, int, int]:
        """``deg = deg+ - deg-`` componentwise (not always the q -> 1 limit)."""
        return (self.x[1] - self.x[0], self.g[1] - self.g[0], self.h[1] - self.h[0])


def bidegree_triple(s: SeqSpecQ) -> BidegreeTriple:
    def side(cm, cp):
        return (-1 if bool(cm) else 0, 1 if bool(cp) else 0)

    ds = [s.dm2, s.dm1, s.d0, s.d1, s.d2]
    nz = [j - 2 for j, d in enumerate(ds) if bool(d)]
    return BidegreeTriple(side(s.bm1, s.b1), (nz[0], nz[-1]), side(s.am1, s.a1))


def q_dual_bidegree(b: BidegreeTriple) -> BidegreeTriple:
    return BidegreeTriple((-b.x[1], -b.x[0]), (-b.g[1], -b.g[0]), (-b.h[1], -b.h[0]))


# ---------------------------------------------------------------------------
# symmetries and the uniform four-parameter form
# ---------------------------------------------------------------------------


def scale_h(s: SeqSpecQ1, rho: Number) -> SeqSpecQ1:
    """``h -> rho h``, ``g -> rho g``."""
    r = Scalar.coerce(rho)
    return replace(
        s, a0=s.a0 * r, a1=s.a1 * r, a2=s.a2 * r,
        d1=s.d1 * r, d2=s.d2 * r, d3=s.d3 * r, d4=s.d4 * r,
    )


def shift_h(s: SeqSpecQ1, sigma: Number) -> SeqSpecQ1:
    return replace(s, a0=s.a0 + Scalar.coerce(sigma))


def scale_x(s: SeqSpecQ1, rho: Number) -> SeqSpecQ1:
    """``x -> rho x``, ``g -> rho g``."""
    r = Scalar.coerce(rho)
    return replace(
        s, b0=s.b0 * r, b1=s.b1 * r, b2=s.b2 * r,
        d1=s.d1 * r, d2=s.d2 * r, d3=s.d3 * r, d4=s.d4 * r,
    )


def shift_x(s: SeqSpecQ1, sigma: Number) -> SeqSpecQ1:
    return replace(s, b0=s.b0 + Scalar.coerce(sigma))


def normalized_spec(s: SeqSpecQ1) -> SeqSpecQ1:
    """Translate ``a0 = b0 = 0`` and dilate to ``a1 = d1 = 1``."""
    if not s.a1:
        raise NotNormalizable("a1 = 0: h cannot be dilated to a1 = 1")
    if not s.d1:
        raise NotNormalizable("d1 = 0: g cannot be dilated to d1 = 1")
    t = shift_x(shift_h(s, -s.a0), -s.b0)
    t = scale_h(t, s.a1.inverse())
    return scale_x(t, t.d1.inverse())


def normalize_uniform(s: SeqSpecQ1) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    n = normalized_spec(s)
    return n.a2, n.b1, n.b2, n.d2


def spec_from_uniform(a2: Number, b1: Number, b2: Number, d2: Number) -> SeqSpecQ1:
    a2, b1, b2, d2 = (Scalar.coerce(v) for v in (a2, b1, b2, d2))
    return SeqSpecQ1(
        a0=ZERO, a1=ONE, a2=a2, b0=ZERO, b1=b1, b2=b2,
        d1=ONE, d2=d2, d3=b2 + a2 * b1 - 2 * a2 * b2, d4=a2 * b2,
    )


def uniform_U(n: int, a2: Number, b1: Number, b2: Number, d2: Number, at: Number) -> Scalar:
    """Hypergeometric sum in the four uniform parameters."""
    a2, b1, b2, d2, z = (Scalar.coerce(v) for v in (a2, b1, b2, d2, at))
    d3 = b2 + a2 * b1 - 2 * a2 * b2
    d4 = a2 * b2
    total = ONE
    term = ONE
    for j in range(n):
        m = j + 1
        den = d4 * m**3 + d3 * m**2 + d2 * m + 1
        if not den:
            raise ZeroDenominatorInProduct(f"factor j={j} vanishes")
        term = term * (j - n) / m * (a2 * (n + j) + 1) * (b2 * (j * j) + b1 * j - z) / den
        total = total + term
    return total


# ---------------------------------------------------------------------------
# the scheme graph
# ---------------------------------------------------------------------------

UNIFORM_PARAMS = ("a2", "b1", "b2", "d2")


@dataclass(frozen=True)
class SchemeNode:
    id: str
    names: tuple[str, ...]
    degree_triple: DegreeTriple
    vanishing: frozenset[str]


@dataclass(frozen=True)
class SchemeGraph:
    nodes: tuple[SchemeNode, ...]
    edges: tuple[tuple[str, str], ...]
    duals: tuple[tuple[str, str], ...]

    def node(self, node_id: str) -> SchemeNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def by_triple(self, t: DegreeTriple) -> SchemeNode:
        for n in self.nodes:
            if n.degree_triple == t:
                return n
        raise NoMatch(f"no node with degree triple {t}")

    def __iter__(self) -> Iterator[SchemeNode]:
        return iter(self.nodes)


def _node(node_id: str, names: str, triple: tuple[int, int, int], vanish: str) -> SchemeNode:
    return SchemeNode(
        node_id,
        tuple(names.split()),
        DegreeTriple(*triple),
        frozenset(vanish.split()),
    )


_NODES = (
    _node("W/R", "W R", (2, 4, 2), ""),
    _node("cdH/dH", "cdH dH", (2, 3, 1), "a2"),
    _node("cH/H", "cH H", (1, 3, 2), "b2"),
    _node("M-P/M/K", "M-P M K", (1, 2, 1), "a2 b2"),
    _node("J", "J", (0, 2, 2), "b1 b2"),
    _node("Ch", "Ch", (1, 1, 1), "a2 b2 d2"),
    _node("L", "L", (0, 2, 1), "a2 b1 b2"),
    _node("B", "B", (0, 1, 2), "b1 b2 d2"),
    # printed box reads a1=a2=b2=d2=0; b1 is the parameter that must vanish
    _node("bin", "bin", (0, 1, 1), "a2 b1 b2 d2"),
)

_EDGES = (
    ("W/R", "cdH/dH"),
    ("W/R", "cH/H"),
    ("cdH/dH", "M-P/M/K"),
    ("cH/H", "M-P/M/K"),
    ("cH/H", "J"),
    ("M-P/M/K", "Ch"),
    ("M-P/M/K", "L"),
    ("J", "L"),
    ("J", "B"),
    ("Ch", "bin"),
    ("L", "bin"),
    ("B", "bin"),
)

_DUALS = (
    ("W/R", "W/R"),
    ("M-P/M/K", "M-P/M/K"),
    ("Ch", "Ch"),
    ("cdH/dH", "cH/H"),
)

_GRAPH = SchemeGraph(_NODES, _EDGES, _DUALS)


def scheme_graph() -> SchemeGraph:
    return _GRAPH


def arrow_successors(t: DegreeTriple) -> set[DegreeTriple]:
    """Triples reachable by one lowering step of the degree-triple rules."""
    out = set()
    cands = [(t.dx - 1, t.dg, t.dh), (t.dx, t.dg - 1, t.dh), (t.dx, t.dg, t.dh - 1)]
    if t.dx + t.dh >= 3:
        cands += [(t.dx - 1, t.dg - 1, t.dh), (t.dx, t.dg - 1, t.dh - 1)]
    for c in cands:
        try:
            out.add(DegreeTriple(*c))
        except RuleViolation:
            pass
    return out


def vanishing_pattern(s: SeqSpecQ1) -> frozenset[str]:
    return frozenset(p for p in UNIFORM_PARAMS if not getattr(s, p))


def classify_spec(s: SeqSpecQ1) -> str:
    """Node id of the scheme box containing ``s``."""
    if not check_q1_constraints(s):
        raise NoMatch("spec violates the recurrence constraints on d3, d4")
    try:
        t = degree_triple(s)
    except RuleViolation as e:
        raise NoMatch(str(e)) from None
    node = _GRAPH.by_triple(t)
    if not node.vanishing <= vanishing_pattern(s):
        raise NoMatch(f"{node.id} requires {sorted(node.vanishing)} = 0")
    return node.id
