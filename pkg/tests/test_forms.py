import random

import pytest

from mk3kit.forms import (
    ExhaustiveBoundExceeded,
    FamilyParams,
    Mk3Form,
    TriprojPoint,
    apply_symmetry,
    evaluate,
    evaluate_affine,
    evaluate_family,
    expand_family,
    fiber_quadratic,
    is_nondegenerate,
    is_singular_point_mod_p,
    is_smooth_mod_p,
    singular_points_mod_p,
    symmetry_group,
)

from oracles import expand_product_family, symmetric_form_poly

PAPER_FAMILY = FamilyParams(6, -468, -4330, 1)
PAPER_COEFFS = (469, -36, -4052880, 1296, 8774438543)

rng = random.Random(1811)


def test_expand_family_trivial():
    assert expand_family(FamilyParams(0, 0, 0, 0)).coefficients() == (1, 0, 0, 0, 0)


def test_expand_family_paper_member_against_symbolic_oracle():
    form = expand_family(PAPER_FAMILY)
    assert form.coefficients() == PAPER_COEFFS
    expanded = expand_product_family(6, -468, -4330, 1)
    assert expanded == symmetric_form_poly(*form.coefficients())


def test_expand_family_symbolic_oracle_random():
    for _ in range(20):
        A, m, C, k = (rng.randint(-9, 9) for _ in range(4))
        form = expand_family(FamilyParams(A, m, C, k))
        assert expand_product_family(A, m, C, k) == symmetric_form_poly(*form.coefficients())


def test_expand_family_ad_relation():
    for m, C, k in [(-468, -4330, 1), (5, 7, -2), (2, 1, 0)]:
        form = expand_family(FamilyParams(6, m, C, k))
        assert form.d == 1296
        assert form.a * form.d == (1 - m) * 1296


def test_evaluate_trivial():
    form = Mk3Form(1, 0, 0, 0, 0)
    assert evaluate(form, TriprojPoint.affine(1, 1, 1)) == 1


def test_evaluate_scaling_degree():
    form = Mk3Form(*PAPER_COEFFS)
    pt = TriprojPoint(((3, 2), (5, 1), (-1, 4)))
    scaled = TriprojPoint(((3 * 7, 2 * 7), (5, 1), (-1, 4)))
    assert evaluate(form, scaled) == 49 * evaluate(form, pt)


def test_evaluate_family_identity_at_ones():
    value = evaluate_affine(expand_family(PAPER_FAMILY), 1, 1, 1)
    assert value == (1 - 36) ** 3 + 468 * (1 - 4330) ** 2 - 1


def test_symmetry_invariance_exact():
    form = expand_family(PAPER_FAMILY)
    group = list(symmetry_group())
    assert len(group) == 24
    for _ in range(10):
        pt = TriprojPoint(tuple((rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(3)))
        base = evaluate(form, pt)
        for signs, perm in group:
            assert evaluate(form, apply_symmetry(signs, perm, pt)) == base


def test_symmetry_invariance_mod_p():
    form = Mk3Form(2, 3, 5, 7, 11)
    p = 13
    for _ in range(10):
        pt = TriprojPoint(tuple((rng.randrange(p), 1) for _ in range(3)))
        base = evaluate(form, pt) % p
        for signs, perm in symmetry_group():
            assert evaluate(form, apply_symmetry(signs, perm, pt)) % p == base


def test_expand_family_matches_product_at_random_points():
    params = FamilyParams(6, -468, -4330, 1)
    form = expand_family(params)
    for _ in range(100):
        x, y, z = (rng.randint(-30, 30) for _ in range(3))
        assert evaluate_affine(form, x, y, z) == evaluate_family(params, x, y, z)


def test_is_nondegenerate():
    assert not is_nondegenerate(Mk3Form(0, 0, -1, 1, -5))  # ad = 0 = b^2
    assert is_nondegenerate(expand_family(PAPER_FAMILY))
    assert not is_nondegenerate(Mk3Form(1, 1, 1, 1, 1))  # be = 1 = d^2


def test_fiber_quadratic_trivial():
    form = Mk3Form(1, 0, 0, 0, 0)
    assert fiber_quadratic(form, 3, ((1, 1), (1, 1))) == (1, 0, 0)


def test_fiber_quadratic_axis_validation():
    with pytest.raises(ValueError):
        fiber_quadratic(Mk3Form(1, 0, 0, 0, 0), 4, ((1, 1), (1, 1)))


def test_fiber_quadratic_at_origin_base():
    form = expand_family(PAPER_FAMILY)
    alpha, beta, gamma = fiber_quadratic(form, 3, ((0, 1), (0, 1)))
    assert (alpha, beta, gamma) == (form.d, 0, form.e)


def test_fiber_roots_substitute_to_zero():
    form = Mk3Form(2, -1, 3, 5, -7)
    p = 11
    for _ in range(50):
        base = tuple((rng.randrange(p), 1) for _ in range(2))
        alpha, beta, gamma = (v % p for v in fiber_quadratic(form, 3, base))
        for w in range(p):
            if (alpha * w * w + beta * w + gamma) % p == 0:
                pt = TriprojPoint((base[0], base[1], (w, 1)))
                assert evaluate(form, pt) % p == 0


def test_smoothness_family_mod7_single_node_at_triple_infinity():
    # the reduction contains the all-infinity point (a = 469 = 7*67) and is
    # singular exactly there; the affine part is smooth
    form = expand_family(PAPER_FAMILY)
    sing = singular_points_mod_p(form, 7)
    assert [pt.pairs for pt in sing] == [((1, 0), (1, 0), (1, 0))]
    assert not is_smooth_mod_p(form, 7)


def test_smoothness_family_good_primes():
    form = expand_family(PAPER_FAMILY)
    assert is_smooth_mod_p(form, 5)
    assert is_smooth_mod_p(form, 11)


def test_smoothness_trivial_form_mod3():
    assert not is_smooth_mod_p(Mk3Form(1, 0, 0, 0, 0), 3)


def test_smoothness_markoff_mod2():
    assert not is_smooth_mod_p(Mk3Form(0, 0, -1, 1, -5), 2)


def test_smoothness_guard():
    with pytest.raises(ExhaustiveBoundExceeded):
        is_smooth_mod_p(Mk3Form(1, 1, 1, 1, 1), 103)


def test_chart_scan_agrees_with_homogeneous_partials():
    # odd characteristic: the chart criterion and the six homogeneous
    # partials single out the same singular points
    form = expand_family(PAPER_FAMILY)
    for p in (5, 7):
        chart_based = {pt.pairs for pt in singular_points_mod_p(form, p)}
        line = [(x, 1) for x in range(p)] + [(1, 0)]
        homog = set()
        for px in line:
            for py in line:
                for pz in line:
                    pt = TriprojPoint((px, py, pz))
                    if evaluate(form, pt) % p == 0 and is_singular_point_mod_p(form, p, pt):
                        homog.add(pt.pairs)
        assert chart_based == homog


def test_chart_partials_match_finite_differences():
    from oracles import chart_partial_fd, chart_value
    from mk3kit.forms import _chart_polynomial

    form = Mk3Form(3, -2, 7, 1, -5)
    p = 11
    for chart in ((0, 0, 0), (1, 0, 1), (1, 1, 1)):
        monos = _chart_polynomial(form, chart)
        for _ in range(20):
            point = [rng.randrange(p) for _ in range(3)]
            for var in range(3):
                formal = 0
                for coeff, exps in monos:
                    if exps[var]:
                        term = coeff * exps[var]
                        for j in range(3):
                            ee = exps[j] - (1 if j == var else 0)
                            term *= point[j] ** ee
                        formal += term
                assert formal % p == chart_partial_fd(
                    form.coefficients(), chart, point, var, p
                )


def test_triproj_validation():
    with pytest.raises(ValueError):
        TriprojPoint(((0, 0), (1, 1), (1, 1)))


def test_canonical_projective_normalization():
    from fractions import Fraction

    pt = TriprojPoint(((Fraction(6, 4), Fraction(2)), (3, -6), (0, -5)))
    assert pt.canonical().pairs == ((3, 4), (-1, 2), (0, 1))
