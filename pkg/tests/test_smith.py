"""Smith normal form engine: transform bookkeeping and divisibility chain."""

import random

import pytest

from difmod.smith import (
    IntegerDomain, PolynomialDomain, PrimeField, RationalField,
    kernel_columns, mat_eq, mat_identity, mat_mul, mat_vec,
    smith_normal_form, solve_linear,
)


def check_decomposition(dom, A):
    sm = smith_normal_form(dom, A)
    nrows, ncols = len(A), len(A[0]) if A else 0
    assert mat_eq(dom, mat_mul(dom, mat_mul(dom, sm.U, A), sm.V), sm.D)
    assert mat_eq(dom, mat_mul(dom, sm.U, sm.Uinv), mat_identity(dom, nrows))
    assert mat_eq(dom, mat_mul(dom, sm.V, sm.Vinv), mat_identity(dom, ncols))
    # diagonal, with the divisibility chain on nonzero entries
    for i in range(nrows):
        for j in range(ncols):
            if i != j:
                assert dom.is_zero(sm.D[i][j])
    diag = sm.diag
    for i in range(len(diag) - 1):
        if not dom.is_zero(diag[i]) and not dom.is_zero(diag[i + 1]):
            _, r = dom.divmod(diag[i + 1], diag[i])
            assert dom.is_zero(r)
        if dom.is_zero(diag[i]):
            assert dom.is_zero(diag[i + 1])
    return sm


def test_integer_known_form():
    dom = IntegerDomain()
    sm = check_decomposition(dom, [[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert sm.diag == [2, 2, 156]


def test_integer_random_matrices():
    dom = IntegerDomain()
    rng = random.Random(7)
    for _ in range(60):
        r = rng.randint(0, 4)
        c = rng.randint(0, 4)
        A = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        sm = check_decomposition(dom, A)
        for col in kernel_columns(dom, A, sm):
            assert all(x == 0 for x in mat_vec(dom, A, col))


def test_integer_solve():
    dom = IntegerDomain()
    A = [[2, 0], [0, 3]]
    assert solve_linear(dom, A, [4, 9]) == [2, 3]
    assert solve_linear(dom, A, [1, 0]) is None
    rng = random.Random(3)
    for _ in range(40):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        x = [rng.randint(-4, 4) for _ in range(c)]
        b = mat_vec(dom, A, x)
        sol = solve_linear(dom, A, b)
        assert sol is not None
        assert mat_vec(dom, A, sol) == b


@pytest.mark.parametrize("field", [PrimeField(2), PrimeField(3), RationalField()])
def test_polynomial_random_matrices(field):
    dom = PolynomialDomain(field)
    rng = random.Random(11)
    def rand_poly():
        if isinstance(field, RationalField):
            coeffs = [rng.randint(-2, 2) for _ in range(rng.randint(0, 3))]
        else:
            coeffs = [rng.randrange(field.p) for _ in range(rng.randint(0, 3))]
        return dom.make(coeffs)
    for _ in range(40):
        r, c = rng.randint(0, 3), rng.randint(0, 3)
        A = [[rand_poly() for _ in range(c)] for _ in range(r)]
        sm = check_decomposition(dom, A)
        for d in sm.diag:
            if not dom.is_zero(d):
                assert d[-1] == field.one  # monic normalization
        for col in kernel_columns(dom, A, sm):
            assert all(dom.is_zero(x) for x in mat_vec(dom, A, col))


def test_polynomial_divmod_and_arith():
    dom = PolynomialDomain(PrimeField(2))
    x_plus_1 = dom.make([1, 1])
    sq = dom.mul(x_plus_1, x_plus_1)
    assert sq == dom.make([1, 0, 1])  # (1+x)^2 = 1 + x^2 over F_2
    q, r = dom.divmod(sq, x_plus_1)
    assert q == x_plus_1 and dom.is_zero(r)
