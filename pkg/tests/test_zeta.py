from fractions import Fraction

import pytest

from mk3kit.zeta import (
    CharPoly,
    SignAmbiguousError,
    TraceData,
    algebraic_traces,
    charpoly_from_counts,
    complete_functional_equation,
    count_unit_roots,
    cyclotomic,
    newton_partial_charpoly,
    picard_upper_bound,
    quotient_traces,
)

PAPER_COUNTS = (43, 2843, 113191, 5786411, 282458443, 13843757831, 678222249307)
PAPER_F_DESC = (1, -1, 0, 4, -4, 0, 6, -6, 6, 0, -4, 4, 0, -1, 1)


def paper_data():
    return TraceData(7, PAPER_COUNTS)


def test_algebraic_traces_paper_part():
    roots = ((1, 3), (-1, 5))
    assert algebraic_traces(roots, 4) == [-2, 8, -2, 8]


def test_algebraic_traces_all_plus():
    assert algebraic_traces(((1, 8),), 3) == [8, 8, 8]


def test_algebraic_traces_minus_square():
    assert algebraic_traces(((-1, 2),), 3) == [-2, 2, -2]


def test_algebraic_traces_rejects_other_roots():
    with pytest.raises(ValueError):
        algebraic_traces(((2, 1),), 1)


def test_quotient_traces_first_value():
    s = quotient_traces(paper_data())
    assert s[0] == Fraction(43, 7) - 7 - Fraction(1, 7) + 2 == 1
    assert s[1] == 1  # n = 2 from the published count


def test_quotient_traces_trivial_surface():
    counts = tuple(7 ** (2 * n) + 1 for n in range(1, 12))
    data = TraceData(7, counts, algebraic_roots=())
    assert quotient_traces(data) == [0] * 11


def test_newton_zero_power_sums():
    assert newton_partial_charpoly([Fraction(0)] * 5, 10) == [0] * 5


def test_newton_all_eigenvalues_one():
    D = 6
    e = newton_partial_charpoly([Fraction(D)] * D, D)
    binom = [6, 15, 20, 15, 6, 1]
    assert e == binom


def test_newton_paper_values():
    s = quotient_traces(paper_data())
    e = newton_partial_charpoly(s[:7], 14)
    assert e == [1, 0, -4, -4, 0, 6, 6]
    # the low-order coefficients of f are (-1)^k e_k
    for k in range(1, 8):
        assert PAPER_F_DESC[k] == (-1) ** k * e[k - 1]


def test_functional_equation_paper():
    s = quotient_traces(paper_data())
    e = newton_partial_charpoly(s[:7], 14)
    f = complete_functional_equation(e, 14)
    assert f.descending() == PAPER_F_DESC


def test_functional_equation_t_minus_one_power():
    # (t-1)^14: e_k = C(14, k)
    binom = [Fraction(1)]
    for k in range(1, 8):
        binom.append(binom[-1] * (14 - k + 1) / k)
    f = complete_functional_equation(binom[1:], 14)
    expected = CharPoly(tuple(int((-1) ** (14 - i) * _choose(14, i)) for i in range(15)))
    assert f.coeffs == expected.coeffs


def _choose(n, k):
    out = 1
    for i in range(1, k + 1):
        out = out * (n - i + 1) // i
    return out


def test_functional_equation_ambiguous_sign():
    with pytest.raises(SignAmbiguousError) as err:
        complete_functional_equation([Fraction(0)] * 7, 14)
    assert len(err.value.completions) == 2
    assert err.value.completions[0] != err.value.completions[1]


def test_count_unit_roots_paper():
    assert count_unit_roots(CharPoly(tuple(reversed(PAPER_F_DESC)))) == 0


def test_count_unit_roots_algebraic_part():
    # (t-1)^3 (t+1)^5
    poly = [1]
    for root in [1] * 3 + [-1] * 5:
        poly = [a - root * b for a, b in zip(poly + [0], [0] + poly)]
    f = CharPoly(tuple(reversed(poly)))
    assert count_unit_roots(f) == 8


def test_count_unit_roots_phi3_factor():
    # (t^2 + t + 1) * (t^2 - t - 1): the second factor is cyclotomic-free
    f = CharPoly(tuple(reversed([1, 0, -1, -2, -1])))
    assert count_unit_roots(f) == 2


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == [1, -1]
    assert cyclotomic(2) == [1, 1]
    assert cyclotomic(6) == [1, -1, 1]
    assert cyclotomic(12) == [1, 0, -1, 0, 1]


def test_picard_upper_bound_paper():
    assert picard_upper_bound(paper_data()) == 8


def test_picard_upper_bound_all_eigenvalues_one():
    counts = tuple(7 ** (2 * n) + 22 * 7**n + 1 for n in range(1, 12))
    data = TraceData(7, counts, algebraic_roots=())
    assert picard_upper_bound(data) == 22


def test_picard_bound_is_algebraic_degree_plus_unit_roots():
    data = paper_data()
    f = charpoly_from_counts(data)
    assert picard_upper_bound(data) == data.algebraic_degree + count_unit_roots(f)


def test_node_corrected_variant():
    # counting on the resolution of the nodal reduction (one extra projective
    # line, one extra Frobenius-fixed divisor class) turns every quotient
    # eigenvalue into a root of unity, so the bound degrades to 22
    counts = tuple(N + 7**n for n, N in enumerate(PAPER_COUNTS, 1))
    data = TraceData(7, counts, algebraic_roots=((1, 4), (-1, 5)))
    f = charpoly_from_counts(data)
    assert f.descending() == (1, -1, 0, 4, -4, 0, 6, -6, 0, 4, -4, 0, 1, -1)
    assert count_unit_roots(f) == 13
    assert picard_upper_bound(data) == 22


def test_trace_data_validation():
    with pytest.raises(ValueError):
        TraceData(7, (43,))  # not enough counts for degree 14
    with pytest.raises(ValueError):
        TraceData(7, PAPER_COUNTS, algebraic_roots=((3, 2),))


def test_weil_sanity_rejects_bad_counts():
    corrupted = (43, 2843, 113191, 5786411, 282458443, 13843757831, 678222249309)
    with pytest.raises(ValueError):
        charpoly_from_counts(TraceData(7, corrupted))


def test_completed_polynomial_is_palindromic():
    f = charpoly_from_counts(paper_data())
    assert f.coeffs == tuple(reversed(f.coeffs))
