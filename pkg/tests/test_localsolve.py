import random
from fractions import Fraction

import pytest

from mk3kit.localsolve import (
    CertificateError,
    HenselFailure,
    adelic_verdict,
    bad_prime_quantities,
    f_value,
    find_hensel_certificate,
    hasse_weil_certificate,
    hensel_check,
    real_point,
    search_solutions_mod,
    slice_curve_z0,
    slice_curve_z1,
)

from oracles import brute_smooth_affine_slice_points

rng = random.Random(60943)


def test_paper_witness_solutions():
    assert (1, 1, 1) in search_solutions_mod(1, 8)
    assert (0, 2, 2) in search_solutions_mod(1, 5)
    assert (2, 3, 2) in search_solutions_mod(1, 7)
    assert (0, 1, 3) in search_solutions_mod(1, 13)


def test_search_respects_congruence_class_only():
    # k = 1 mod 8 is all the mod-8 search sees
    assert search_solutions_mod(1 + 8 * 10**30, 8) == search_solutions_mod(1, 8)


def test_search_guard():
    with pytest.raises(CertificateError):
        search_solutions_mod(1, 1024)


def test_hensel_p2_paper_certificate():
    cert = hensel_check(1, 2, (1, 1, 1), "x", e=1)
    assert cert.precision == 8
    cert.revalidate(1)  # pure modular re-check


def test_hensel_derivative_valuation_must_be_exact():
    # at (1,1,1) mod 8 the x-derivative has valuation exactly 1, so e=0 fails
    with pytest.raises(HenselFailure):
        hensel_check(1, 2, (1, 1, 1), "x", e=0)


def test_hensel_totally_singular_point_fails():
    # k = 3: (0,0,0) solves mod 3 but every partial vanishes mod 3
    assert f_value(3, 0, 0, 0) % 3 == 0
    for coord in "xyz":
        with pytest.raises(HenselFailure):
            hensel_check(3, 3, (0, 0, 0), coord, e=0)


def test_find_hensel_certificates_at_witness_primes():
    for p in (2, 3, 5, 7, 13):
        status, cert = find_hensel_certificate(1, p)
        assert status == "certified"
        cert.revalidate(1)


def test_paper_witnesses_are_certifiable():
    # the published points admit a Hensel coordinate (y at 5, 7 and 13,
    # where the x-partial vanishes mod p)
    hensel_check(1, 3, (1, 1, 1), "x", 0)
    hensel_check(1, 5, (0, 2, 2), "y", 0)
    hensel_check(1, 7, (2, 3, 2), "y", 0)
    hensel_check(1, 13, (0, 1, 3), "y", 0)


def test_bad_prime_quantities_k1():
    q1, q2 = bad_prime_quantities(1)
    assert q1 == -468 * 4330**2 + 1 == -8774485199
    assert q2 == q1 + 36**3 == -8774438543


def test_hasse_weil_z0_certificate():
    cert = hasse_weil_certificate(1, 11)
    assert cert.slice_z == 0
    assert cert.q1_mod_p != 0 and cert.q2_mod_p != 0
    assert cert.infinity_points == 4


def test_hasse_weil_falls_back_to_z1():
    # arrange 11 | Q1 by choosing k = -m0 C0^2 mod 11
    k = (468 * 4330**2) % 11
    q1, _ = bad_prime_quantities(k)
    assert q1 % 11 == 0
    cert = hasse_weil_certificate(k, 11)
    assert cert.slice_z == 1


def test_hasse_weil_rejected_primes():
    with pytest.raises(CertificateError):
        hasse_weil_certificate(1, 13)
    with pytest.raises(CertificateError):
        hasse_weil_certificate(1, 7)


def test_hasse_weil_large_bad_primes_for_k1():
    for p in (7211, 93601, 8774485199):
        cert = hasse_weil_certificate(1, p)
        assert cert.slice_z == 1
        assert cert.infinity_points <= 4


def test_slice_smoothness_matches_point_scan():
    # the exact singular-locus scan agrees with brute smooth-point counting:
    # z=0 slice is smooth iff every on-curve point is smooth, and the count
    # of affine smooth points matches the plain scan
    for p in (11, 17, 23):
        curve = slice_curve_z0(1)
        assert curve.is_smooth_mod(p)
        assert brute_smooth_affine_slice_points(1, p) > 0


def test_slice_z1_singular_detection():
    # mod p the z=1 slice degenerates when all coefficients vanish; use a
    # synthetic check that a visibly singular curve is caught: the z=0 slice
    # with p | Q1 has a whole fiber on the curve
    k = (468 * 4330**2) % 11
    assert not slice_curve_z0(k).is_smooth_mod(11)


def test_real_point_large_k_axis_slice():
    k = 8774438544 + 1296 * 36 + 12345
    cert = real_point(k)
    assert cert.slice_name == "y=z=0"
    lo, hi = cert.bracket
    g = lambda x: 1296 * x * x + (8774438544 - k)
    assert g(lo) * g(hi) <= 0


def test_real_point_k1_bracket_exact_sign_change():
    cert = real_point(1)
    lo, hi = cert.bracket

    def h(t: Fraction) -> Fraction:
        t2 = t * t
        return (t2 - 36) ** 2 * (4330**2 - 36 * t2 * t2) - 1 * t2 * t2

    assert h(lo) > 0 > h(hi) or h(lo) < 0 < h(hi)
    assert cert.radius < 1e-6


def test_real_point_negative_k():
    cert = real_point(-10**6)
    assert cert is not None
    lo, hi = cert.bracket

    def h(t: Fraction) -> Fraction:
        t2 = t * t
        return (t2 - 36) ** 2 * (4330**2 - 36 * t2 * t2) + 10**6 * t2 * t2

    assert (h(lo) > 0) != (h(hi) > 0)


def test_adelic_verdict_k1_exists():
    verdict = adelic_verdict(1)
    assert verdict.verdict == "exists"
    assert verdict.unfactored_cofactor == 1
    places = {r.place: r for r in verdict.places}
    for p in ("real", "2", "3", "5", "7", "13", "7211", "93601", "8774485199", "generic"):
        assert places[p].status == "certified", p


def test_adelic_verdict_local_obstruction_mod3():
    # k = 2 mod 3 makes the equation (xyz)^2 = 2 mod 3: no solutions at all
    verdict = adelic_verdict(2)
    assert verdict.verdict == "insoluble"
    report = {r.place: r for r in verdict.places}["3"]
    assert report.status == "insoluble"


def test_adelic_verdict_serializes():
    import json

    verdict = adelic_verdict(1)
    payload = json.dumps(verdict.to_dict())
    assert "hasse-weil" in payload and "hensel" in payload


def test_theorem_progression_member_is_locally_soluble():
    # k = l^2 with l = 1 mod P satisfies the local-solvability hypotheses;
    # the bad-prime quantity cannot be factored, so the residual places rest
    # on the congruence condition and are flagged as assumption-backed
    from mk3kit.brauer import P_MODULUS

    ell = P_MODULUS + 1
    verdict = adelic_verdict(ell * ell)
    assert verdict.verdict == "exists"
    assert verdict.assumption_flagged == ["star-residual"]
    assert verdict.unfactored_cofactor > 1


def test_adelic_verdict_without_star_degrades_to_unknown():
    # soluble at the witness primes but off the progression, with Q1*Q2 out
    # of trial-division reach: the verdict must degrade honestly
    from mk3kit.localsolve import satisfies_star

    k = 1 + (8 * 3 * 5 * 7 * 13) * 10**30
    assert not satisfies_star(k)
    verdict = adelic_verdict(k)
    assert verdict.unfactored_cofactor > 1
    assert verdict.verdict == "unknown"
    assert any(r.place == "unfactored" for r in verdict.places)
