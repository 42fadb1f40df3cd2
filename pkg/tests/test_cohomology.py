import random

import pytest

from mk3kit.cohomology import (
    InvolutionModule,
    h1,
    quotient_module,
    sigma_picU,
    sigma_picW_caseS,
    sigma_picW_caseSprime,
)
from mk3kit.intlinalg import identity, kernel_basis, mat_mul, solve_integer

rng = random.Random(90125)


def test_h1_identity_action():
    assert h1(InvolutionModule.from_matrix(identity(4))) == ()


def test_h1_negation():
    minus = [[-1 if i == j else 0 for j in range(5)] for i in range(5)]
    assert h1(InvolutionModule.from_matrix(minus)) == (2, 2, 2, 2, 2)


def test_h1_swap():
    assert h1(InvolutionModule.from_matrix([[0, 1], [1, 0]])) == ()


def test_involution_validation():
    with pytest.raises(ValueError):
        InvolutionModule.from_matrix([[1, 1], [0, 1]])


def test_builtin_cases_agree():
    s = sigma_picW_caseS()
    sp = sigma_picW_caseSprime()
    assert mat_mul(s.matrix(), s.matrix()) == identity(8)
    assert mat_mul(sp.matrix(), sp.matrix()) == identity(8)
    assert h1(s) == (2, 2)
    assert h1(sp) == (2, 2)


def test_pic_affine_quotient():
    mod = sigma_picU()
    assert mod.rank == 5
    assert mod.matrix() == [[-1 if i == j else 0 for j in range(5)] for i in range(5)]
    assert h1(mod) == (2, 2, 2, 2, 2)


def test_pic_affine_kernel_is_everything():
    # 1 + sigma = 0 on the quotient, so its kernel is the whole lattice
    sigma = sigma_picU().matrix()
    one_plus = [[(1 if i == j else 0) + sigma[i][j] for j in range(5)] for i in range(5)]
    K = kernel_basis(one_plus)
    assert len(K[0]) == 5
    # and Im(1 - sigma) = 2L
    one_minus = [[(1 if i == j else 0) - sigma[i][j] for j in range(5)] for i in range(5)]
    assert one_minus == [[2 if i == j else 0 for j in range(5)] for i in range(5)]


def _random_unimodular(n):
    U = identity(n)
    if n < 2:
        return U
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for t in range(n):
            U[i][t] += c * U[j][t]
    return U


def _random_involution(n):
    # conjugate a signed permutation involution by a random unimodular matrix
    perm = list(range(n))
    for i in range(0, n - 1, 2):
        if rng.random() < 0.5:
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
    signs = [rng.choice((1, -1)) for _ in range(n)]
    base = [[signs[j] if perm[i] == j else 0 for j in range(n)] for i in range(n)]
    # fix signs so the permutation part still squares to 1
    for i in range(n):
        j = perm[i]
        if j != i:
            base[i][j] = signs[min(i, j)]
    U = _random_unimodular(n)
    Uinv = solve_integer(U, identity(n))
    return base, mat_mul(U, mat_mul(base, Uinv))


def test_h1_unimodular_conjugation_invariance():
    for _ in range(100):
        n = rng.randint(1, 8)
        base, conj = _random_involution(n)
        assert h1(InvolutionModule.from_matrix(base)) == h1(InvolutionModule.from_matrix(conj))


def test_h1_invariant_factors_divide_two():
    for _ in range(50):
        n = rng.randint(1, 6)
        _, conj = _random_involution(n)
        for d in h1(InvolutionModule.from_matrix(conj)):
            assert d == 2


def test_quotient_module_rejects_non_summand():
    mod = sigma_picW_caseS()
    doubled = [[2 if i == j and i < 3 else 0 for j in range(3)] for i in range(8)]
    with pytest.raises(ValueError):
        quotient_module(mod, doubled)


def test_quotient_module_rejects_unstable_span():
    swap = InvolutionModule.from_matrix([[0, 1], [1, 0]])
    span = [[1], [0]]  # e1 alone is not sigma-stable
    with pytest.raises(ValueError):
        quotient_module(swap, span)
