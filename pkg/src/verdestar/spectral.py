"""Newton-basis construction of the monic family ``u_n`` from a data triple.

Given eigenvalues ``h_k``, Newton nodes ``x_k`` and lowering coefficients
``g_k``, the operator ``L`` acts on the Newton basis ``v_k`` by
``L v_k = h_k v_k + g_k v_{k-1}``; ``u_n`` is its monic eigenpolynomial
for ``h_n``.  This module builds ``u_n``, its hypergeometric normalization
``U_n``, the recurrence coefficients, and checks the identities tying them
together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import ONE, ZERO, Number, Poly, Scalar


class DepthExceeded(IndexError):
    pass


class HCollision(ValueError):
    def __init__(self, i: int, j: int, value: Scalar) -> None:
        super().__init__(f"h_{i} = h_{j} = {value}")
        self.indices = (i, j)


class ZeroGInRange(ArithmeticError):
    def __init__(self, k: int) -> None:
        super().__init__(f"g_{k} = 0 (finite system truncates before this degree)")
        self.k = k


class DualNotDefined(ValueError):
    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"x_{i} = x_{j}; the x<->h dual needs distinct nodes")
        self.indices = (i, j)


def _first_collision(values: Sequence[Scalar]) -> tuple[int, int] | None:
    seen: dict[Scalar, int] = {}
    for j, v in enumerate(values):
        if v in seen:
            return seen[v], j
        seen[v] = j
    return None


@dataclass(frozen=True)
class TripleData:
    """Evaluated sequences ``h_0..h_K``, ``x_0..x_K`` and ``g_1..g_K``.

    ``g`` is stored with ``g[0] = 0`` so that ``g[k]`` is ``g_k``.
    """

    h: tuple[Scalar, ...]
    x: tuple[Scalar, ...]
    g: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not (len(self.h) == len(self.x) == len(self.g)):
            raise ValueError("h, x and g must cover the same depth")
        if not self.h:
            raise ValueError("empty data triple")
        if self.g[0]:
            raise ValueError("g_0 must be 0")
        hit = _first_collision(self.h)
        if hit is not None:
            raise HCollision(hit[0], hit[1], self.h[hit[0]])

    @classmethod
    def from_sequences(
        cls,
        h: Sequence[Number],
        x: Sequence[Number],
        g: Sequence[Number],
        *,
        g_from_one: bool = False,
    ) -> TripleData:
        """Build from plain sequences; with ``g_from_one`` the list starts at g_1."""
        gs = [Scalar.coerce(v) for v in g]
        if g_from_one:
            gs = [ZERO] + gs
        return cls(
            tuple(Scalar.coerce(v) for v in h),
            tuple(Scalar.coerce(v) for v in x),
            tuple(gs),
        )

    @classmethod
    def from_functions(cls, h, x, g, K: int) -> TripleData:
        return cls(
            tuple(Scalar.coerce(h(k)) for k in range(K + 1)),
            tuple(Scalar.coerce(x(k)) for k in range(K + 1)),
            (ZERO,) + tuple(Scalar.coerce(g(k)) for k in range(1, K + 1)),
        )

    @property
    def K(self) -> int:
        return len(self.h) - 1

    def truncation(self) -> int | None:
        """Smallest ``N`` with ``g_{N+1} = 0`` inside the depth, if any."""
        for k in range(1, self.K + 1):
            if not self.g[k]:
                return k - 1
        return None

    def max_degree(self) -> int:
        """Largest ``n`` for which the full (finite or infinite) system is meaningful."""
        N = self.truncation()
        top = self.K - 1
        return top if N is None else min(N, top)

    def with_g(self, k: int, value: Number) -> TripleData:
        g = list(self.g)
        g[k] = Scalar.coerce(value)
        return TripleData(self.h, self.x, tuple(g))


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise DepthExceeded(what)


def newton_basis(t: TripleData, k: int, var: str = "x") -> Poly:
    _check(0 <= k <= t.K, f"v_{k} needs depth {k}, have {t.K}")
    p = Poly.const(ONE, var)
    for j in range(k):
        p = p * Poly([-t.x[j], ONE], var)
    return p


def coeff_c(t: TripleData, n: int, k: int) -> Scalar:
    _check(0 <= k <= n <= t.K - 1, f"c_{{{n},{k}}} outside depth {t.K}")
    c = ONE
    hn = t.h[n]
    for j in range(k, n):
        c = c * t.g[j + 1] / (hn - t.h[j])
    return c


def coeff_vector(t: TripleData, n: int) -> list[Scalar]:
    """``[c_{n,0}, ..., c_{n,n}]`` computed by one backward sweep."""
    _check(0 <= n <= t.K - 1, f"u_{n} outside depth {t.K}")
    out = [ZERO] * (n + 1)
    out[n] = ONE
    hn = t.h[n]
    for k in range(n - 1, -1, -1):
        out[k] = out[k + 1] * t.g[k + 1] / (hn - t.h[k])
    return out


def monic_u(t: TripleData, n: int, var: str = "x") -> Poly:
    cs = coeff_vector(t, n)
    u = Poly((), var)
    v = Poly.const(ONE, var)
    for k, c in enumerate(cs):
        if c:
            u = u + v * c
        if k < n:
            v = v * Poly([-t.x[k], ONE], var)
    return u


def hypergeometric_factor(t: TripleData, n: int) -> Scalar:
    """``prod_{j<n} (h_n - h_j) / g_{j+1}``, the ratio ``U_n / u_n``."""
    _check(0 <= n <= t.K - 1, f"U_{n} outside depth {t.K}")
    f = ONE
    for j in range(n):
        if not t.g[j + 1]:
            raise ZeroGInRange(j + 1)
        f = f * (t.h[n] - t.h[j]) / t.g[j + 1]
    return f


def hypergeometric_U(t: TripleData, n: int, at: Number) -> Scalar:
    """Terminating sum ``sum_k prod_{j<k} (h_n-h_j)(at-x_j)/g_{j+1}``."""
    for j in range(min(n, t.K)):
        if not t.g[j + 1]:
            raise ZeroGInRange(j + 1)
    _check(0 <= n <= t.K - 1, f"U_{n} outside depth {t.K}")
    z = Scalar.coerce(at)
    total = ONE
    term = ONE
    hn = t.h[n]
    for j in range(n):
        term = term * (hn - t.h[j]) * (z - t.x[j]) / t.g[j + 1]
        total = total + term
    return total


def operator_matrix(t: TripleData, N: int) -> list[list[Scalar]]:
    """Upper-bidiagonal matrix of ``L`` in the Newton basis ``v_0..v_N``."""
    _check(0 <= N <= t.K - 1, f"matrix size {N} outside depth {t.K}")
    m = [[ZERO] * (N + 1) for _ in range(N + 1)]
    for k in range(N + 1):
        m[k][k] = t.h[k]
        if k < N:
            m[k][k + 1] = t.g[k + 1]
    return m


def verify_eigen(t: TripleData, n: int, coeffs: Sequence[Scalar] | None = None) -> bool:
    """Check ``L u_n = h_n u_n`` on Newton coefficients.

    ``coeffs`` overrides the computed ``c_{n,k}`` (used to probe corrupted input).
    """
    cs = list(coeffs) if coeffs is not None else coeff_vector(t, n)
    m = operator_matrix(t, n)
    for row, mrow in enumerate(m):
        lhs = ZERO
        for col, a in enumerate(mrow):
            if a:
                lhs = lhs + a * cs[col]
        if lhs != t.h[n] * cs[row]:
            return False
    return True


def recurrence_terms(h, x, g, n: int):
    """``(A_n, B_n)`` from indexable sequences over any field.

    ``B_n`` is ``None`` for ``n = 0``.  The ``g_{n-1}/(h_{n-2}-h_n)`` term is
    dropped at ``n = 1`` because ``g_0 = 0``.
    """
    if n == 0:
        return x[0] - g[1] / (h[1] - h[0]), None
    r_prev = g[n] / (h[n - 1] - h[n])
    A = x[n] + g[n + 1] / (h[n] - h[n + 1]) - r_prev
    inner = -r_prev + g[n + 1] / (h[n - 1] - h[n + 1]) + x[n] - x[n - 1]
    if n >= 2:
        inner = inner + g[n - 1] / (h[n - 2] - h[n])
    return A, r_prev * inner


def recurrence(t: TripleData, n: int) -> tuple[Scalar, Scalar | None]:
    _check(0 <= n and n + 1 <= t.K, f"A_{n}, B_{n} need depth {n + 1}, have {t.K}")
    return recurrence_terms(t.h, t.x, t.g, n)


def ttrr_residual(t: TripleData, n: int, var: str = "x") -> Poly:
    """``x u_n - u_{n+1} - A_n u_n - B_n u_{n-1}``; zero certifies level ``n``."""
    _check(1 <= n <= t.K - 2, f"TTRR at n={n} needs 1 <= n <= {t.K - 2}")
    A, B = recurrence(t, n)
    un = monic_u(t, n, var)
    return Poly.gen(var) * un - monic_u(t, n + 1, var) - un * A - monic_u(t, n - 1, var) * B


verify_ttrr = ttrr_residual


def dualize(t: TripleData) -> TripleData:
    hit = _first_collision(t.x)
    if hit is not None:
        raise DualNotDefined(*hit)
    return TripleData(t.x, t.h, t.g)


def dual_identity_check(t: TripleData, n: int, m: int) -> bool:
    """``U_n(x_m) == U~_m(h_n)`` with ``U~`` built from the dual triple."""
    d = dualize(t)
    return hypergeometric_U(t, n, t.x[m]) == hypergeometric_U(d, m, t.h[n])


@dataclass(frozen=True)
class MonicSystem:
    u: tuple[Poly, ...]
    c: tuple[tuple[Scalar, ...], ...] = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.u) - 1


def monic_system(t: TripleData, N: int) -> MonicSystem:
    return MonicSystem(
        tuple(monic_u(t, n) for n in range(N + 1)),
        tuple(tuple(coeff_vector(t, n)) for n in range(N + 1)),
    )
