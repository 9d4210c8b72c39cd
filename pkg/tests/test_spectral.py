from __future__ import annotations

from fractions import Fraction

import pytest

from verdestar.exactnum import ONE, ZERO, Poly, Scalar
from verdestar.spectral import (
    DepthExceeded,
    DualNotDefined,
    HCollision,
    TripleData,
    ZeroGInRange,
    coeff_c,
    coeff_vector,
    dual_identity_check,
    dualize,
    hypergeometric_U,
    hypergeometric_factor,
    monic_system,
    monic_u,
    newton_basis,
    operator_matrix,
    recurrence,
    ttrr_residual,
    verify_eigen,
)

x = Poly.gen("x")
K = 10


def charlier1(K=K):
    return TripleData.from_functions(lambda k: -k, lambda k: k, lambda k: k, K)


def binomial(K=K):
    return TripleData.from_functions(lambda k: -k, lambda k: 0, lambda k: k, K)


def wilson(a, b, c, d, K=K):
    s = a + b + c + d
    return TripleData.from_functions(
        lambda k: -k * (k + s - 1),
        lambda k: -((k + a) ** 2),
        lambda k: k * (k + a + b - 1) * (k + a + c - 1) * (k + a + d - 1),
        K,
    )


def test_construction_checks():
    with pytest.raises(HCollision):
        TripleData.from_sequences([0, 1, 0], [0, 1, 2], [0, 1, 1])
    with pytest.raises(ValueError):
        TripleData.from_sequences([0, 1], [0, 1], [1, 1])
    t = TripleData.from_sequences([0, 1, 2], [0, 0, 0], [1, 1], g_from_one=True)
    assert t.g == (ZERO, ONE, ONE) and t.K == 2


def test_newton_basis():
    t = charlier1()
    assert newton_basis(t, 2) == x * x - x
    assert newton_basis(t, 2)(0) == 0 and newton_basis(t, 2)(1) == 0
    assert newton_basis(t, 0) == Poly.const(1, "x")
    assert newton_basis(wilson(1, 2, 3, 4), 1) == x + 1
    with pytest.raises(DepthExceeded):
        newton_basis(t, K + 1)


def test_coeff_c():
    t = charlier1()
    assert coeff_c(t, 5, 5) == 1
    assert coeff_c(t, 2, 0) == 1
    assert coeff_c(t, 2, 1) == -2
    assert coeff_vector(t, 2) == [1, -2, 1]
    with pytest.raises(DepthExceeded):
        coeff_c(t, K, 0)


def test_monic_u():
    t = charlier1()
    assert monic_u(t, 0) == Poly.const(1, "x")
    assert monic_u(t, 1) == x - 1
    assert monic_u(t, 2) == x * x - 3 * x + 1
    # independent route: u_2 = (x - A_1) u_1 - B_1 u_0 with A_1 = 2, B_1 = 1
    assert monic_u(t, 2) == (x - 2) * (x - 1) - 1


def test_hypergeometric_U():
    t = binomial()
    for n in range(6):
        assert hypergeometric_U(t, n, 0) == 1
        for at in (Scalar(3), Scalar(Fraction(-1, 2), 2)):
            assert hypergeometric_U(t, n, at) == (1 - at) ** n
    c = charlier1()
    assert hypergeometric_U(c, 1, 4) == -3
    assert hypergeometric_U(c, 0, 17) == 1


def test_hypergeometric_matches_monic():
    t = wilson(1, 2, 3, 4)
    pts = [Scalar(2), Scalar(-3), Scalar(Fraction(1, 7)), Scalar(0, 1), Scalar(5, -2)]
    for n in range(7):
        f = hypergeometric_factor(t, n)
        for p in pts:
            assert hypergeometric_U(t, n, p) == monic_u(t, n)(p) * f


def test_zero_g_in_range():
    # Hahn-like finite data: g_3 = 0
    t = TripleData.from_functions(lambda k: k * (k + 3), lambda k: k, lambda k: k * (k + 1) * (k - 3), 6)
    hypergeometric_U(t, 2, 5)
    with pytest.raises(ZeroGInRange):
        hypergeometric_U(t, 3, 5)
    assert t.truncation() == 2


def test_operator_matrix():
    m = operator_matrix(charlier1(), 2)
    assert [m[i][i] for i in range(3)] == [0, -1, -2]
    assert [m[i][i + 1] for i in range(2)] == [1, 2]
    assert m[0][2] == 0 and m[2][0] == 0
    assert operator_matrix(charlier1(), 0) == [[ZERO]]
    # a=b=c=d=1: g_1 = 1 * 2 * 2 * 2 and h_1 = -1 * 4
    w = operator_matrix(wilson(1, 1, 1, 1), 1)
    assert w == [[0, 8], [0, -4]]


def test_verify_eigen():
    t = charlier1()
    assert verify_eigen(t, 2)
    assert verify_eigen(t, 0)
    assert not verify_eigen(t, 2, [Scalar(1), ZERO, Scalar(1)])
    assert all(verify_eigen(wilson(1, 2, 3, 4), n) for n in range(9))


def test_recurrence_charlier():
    t = charlier1()
    assert recurrence(t, 0) == (1, None)
    for n in range(1, K):
        assert recurrence(t, n) == (n + 1, n)


def test_recurrence_binomial():
    A, B = recurrence(binomial(), 1)
    assert A == 1 and B == 0
    with pytest.raises(DepthExceeded):
        recurrence(binomial(), K)


def test_ttrr():
    assert ttrr_residual(charlier1(), 1).is_zero()
    w = wilson(1, 2, 3, 4)
    for n in range(1, 6):
        assert ttrr_residual(w, n).is_zero()
    bad = w.with_g(3, w.g[3] + 1)
    assert any(not ttrr_residual(bad, n).is_zero() for n in (1, 2, 3))
    with pytest.raises(DepthExceeded):
        ttrr_residual(w, K - 1)


def test_dualize():
    t = charlier1()
    d = dualize(t)
    assert d.h == tuple(Scalar(k) for k in range(K + 1))
    assert d.x == tuple(Scalar(-k) for k in range(K + 1))
    assert d.g == t.g
    assert dualize(d) == t
    jac = TripleData.from_functions(lambda k: Fraction(k * (k + 4), 2), lambda k: 1, lambda k: k * (k + 1), 6)
    with pytest.raises(DualNotDefined):
        dualize(jac)


def test_dual_identity():
    c = charlier1()
    assert dual_identity_check(c, 2, 3)
    assert dual_identity_check(c, 0, 4) and dual_identity_check(c, 4, 0)
    w = wilson(1, 2, 3, 4)
    assert all(dual_identity_check(w, n, m) for n in range(6) for m in range(6))


def test_dual_identity_brute_force():
    # both sides summed directly from the defining products
    w = wilson(1, 2, 3, 4)
    for n in range(4):
        for m in range(4):
            lhs = sum(
                (_prod((w.h[n] - w.h[j]) * (w.x[m] - w.x[j]) / w.g[j + 1] for j in range(k)) for k in range(n + 1)),
                ZERO,
            )
            rhs = sum(
                (_prod((w.x[m] - w.x[j]) * (w.h[n] - w.h[j]) / w.g[j + 1] for j in range(k)) for k in range(m + 1)),
                ZERO,
            )
            assert lhs == rhs == hypergeometric_U(w, n, w.x[m])


def _prod(it):
    out = ONE
    for v in it:
        out = out * v
    return out


def test_monic_system():
    ms = monic_system(charlier1(), 4)
    assert ms.N == 4
    assert all(u.is_monic() and u.degree == n for n, u in enumerate(ms.u))
    assert all(row[-1] == 1 for row in ms.c)
