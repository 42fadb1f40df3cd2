"""Symmetric (2,2,2)-forms on P1 x P1 x P1 and their basic geometry.

The five-coefficient family

    a x^2y^2z^2 + b(x^2y^2 + x^2z^2 + y^2z^2) + c xyz + d(x^2 + y^2 + z^2) + e

is the general form invariant under coordinate permutations and double sign
changes (the order-24 group generated by (x,y,z) -> (-x,-y,z) and S_3).  Its
unique bihomogenization of tridegree (2,2,2) replaces x^2 -> x^2, cross terms
picking up the complementary pair coordinates; `evaluate` implements that
homogenization directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

import numpy as np

from .arith import is_probable_prime

SMOOTHNESS_EXHAUSTIVE_LIMIT = 101

SIGN_TRIPLES = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
PERMUTATIONS = tuple(permutations((0, 1, 2)))


class ExhaustiveBoundExceeded(ValueError):
    """Raised when an exhaustive search is requested beyond its guard."""


@dataclass(frozen=True)
class Mk3Form:
    """Coefficient quintuple of the symmetric (2,2,2)-form."""

    a: int
    b: int
    c: int
    d: int
    e: int

    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e)

    def reduce_mod(self, p: int) -> "Mk3Form":
        return Mk3Form(*(v % p for v in self.coefficients()))


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of the sextuple-product family

    (x^2 - A^2)(y^2 - A^2)(z^2 - A^2) - m (xyz + C)^2 - k.
    """

    A: int
    m: int
    C: int
    k: int


@dataclass(frozen=True)
class TriprojPoint:
    """Point of P1 x P1 x P1 as three coordinate pairs, each not both zero."""

    pairs: tuple[tuple, tuple, tuple]

    def __post_init__(self):
        if len(self.pairs) != 3:
            raise ValueError("need three coordinate pairs")
        for pair in self.pairs:
            if len(pair) != 2 or (pair[0] == 0 and pair[1] == 0):
                raise ValueError(f"invalid coordinate pair {pair}")

    @staticmethod
    def affine(x, y, z) -> "TriprojPoint":
        return TriprojPoint(((x, 1), (y, 1), (z, 1)))

    def canonical(self) -> "TriprojPoint":
        """Scale each pair to a primitive integer pair with canonical sign.

        Coordinates must be ints or Fractions.  The second entry is made
        positive (or the first, when the second vanishes), which makes the
        representation unique and usable as a set key.
        """
        out = []
        for u, v in self.pairs:
            fu, fv = Fraction(u), Fraction(v)
            den = fu.denominator * fv.denominator // gcd(fu.denominator, fv.denominator)
            iu, iv = int(fu * den), int(fv * den)
            g = gcd(iu, iv)
            iu, iv = iu // g, iv // g
            if iv < 0 or (iv == 0 and iu < 0):
                iu, iv = -iu, -iv
            out.append((iu, iv))
        return TriprojPoint(tuple(out))


def expand_family(params: FamilyParams) -> Mk3Form:
    """Collect the product family into the five symmetric coefficients."""
    A, m, C, k = params.A, params.m, params.C, params.k
    return Mk3Form(
        a=1 - m,
        b=-(A * A),
        c=-2 * m * C,
        d=A**4,
        e=-(A**6 + m * C * C + k),
    )


def evaluate_family(params: FamilyParams, x, y, z):
    """Direct evaluation of the product formula (oracle for expand_family)."""
    A, m, C, k = params.A, params.m, params.C, params.k
    return (x * x - A * A) * (y * y - A * A) * (z * z - A * A) - m * (x * y * z + C) ** 2 - k


def evaluate(form: Mk3Form, pt: TriprojPoint):
    """Value of the (2,2,2)-homogenization at a triprojective point."""
    (x, r), (y, s), (z, t) = pt.pairs
    a, b, c, d, e = form.coefficients()
    x2, y2, z2 = x * x, y * y, z * z
    r2, s2, t2 = r * r, s * s, t * t
    return (
        a * x2 * y2 * z2
        + b * (x2 * y2 * t2 + x2 * s2 * z2 + r2 * y2 * z2)
        + c * x * y * z * r * s * t
        + d * (x2 * s2 * t2 + r2 * y2 * t2 + r2 * s2 * z2)
        + e * r2 * s2 * t2
    )


def evaluate_affine(form: Mk3Form, x, y, z):
    return evaluate(form, TriprojPoint.affine(x, y, z))


def apply_symmetry(signs, perm, pt: TriprojPoint) -> TriprojPoint:
    """Act by a sign triple (product +1) and a coordinate permutation."""
    flipped = tuple((s * u, v) for s, (u, v) in zip(signs, pt.pairs))
    return TriprojPoint(tuple(flipped[perm[i]] for i in range(3)))


def symmetry_group():
    """The 24 (signs, permutation) pairs leaving every Mk3Form invariant."""
    for signs in SIGN_TRIPLES:
        for perm in PERMUTATIONS:
            yield signs, perm


def is_nondegenerate(form: Mk3Form) -> bool:
    """Quasi-finiteness of all three double covers: c != 0, be != d^2, ad != b^2."""
    a, b, c, d, e = form.coefficients()
    return c != 0 and b * e != d * d and a * d != b * b


def fiber_quadratic(form: Mk3Form, axis: int, base: tuple) -> tuple:
    """Binary quadratic (alpha, beta, gamma) cut out on the fiber over `base`.

    `axis` in {1,2,3} names the projection coordinate being solved for; `base`
    holds the other two coordinate pairs in increasing index order.  By the
    coordinate symmetry of the form, the formula is the same for every axis:
    with base pairs (x:r), (y:s),

        alpha = a x^2y^2 + b(x^2s^2 + r^2y^2) + d r^2s^2
        beta  = c xy rs
        gamma = b x^2y^2 + d(x^2s^2 + r^2y^2) + e r^2s^2
    """
    if axis not in (1, 2, 3):
        raise ValueError("axis must be 1, 2 or 3")
    (x, r), (y, s) = base
    a, b, c, d, e = form.coefficients()
    x2, y2, r2, s2 = x * x, y * y, r * r, s * s
    cross = x2 * s2 + r2 * y2
    alpha = a * x2 * y2 + b * cross + d * r2 * s2
    beta = c * x * y * r * s
    gamma = b * x2 * y2 + d * cross + e * r2 * s2
    return alpha, beta, gamma


def homogeneous_partials(form: Mk3Form, pt: TriprojPoint) -> tuple:
    """The six partials of the homogenized form at a point.

    Viewing the form as alpha_i u^2 + beta_i uv + gamma_i v^2 in the i-th pair
    (u:v) with fiber coefficients over the other two pairs gives
    dF/du = 2 alpha u + beta v and dF/dv = beta u + 2 gamma v.
    """
    out = []
    for axis in (1, 2, 3):
        others = tuple(pt.pairs[i] for i in range(3) if i != axis - 1)
        alpha, beta, gamma = fiber_quadratic(form, axis, others)
        u, v = pt.pairs[axis - 1]
        out.append(2 * alpha * u + beta * v)
        out.append(beta * u + 2 * gamma * v)
    return tuple(out)


def _proj_line_points(p: int):
    return [(x, 1) for x in range(p)] + [(1, 0)]


def is_singular_point_mod_p(form: Mk3Form, p: int, pt: TriprojPoint) -> bool:
    """Point of the reduction is singular iff all six partials vanish mod p.

    Valid in odd characteristic: on each chart the Euler relation
    u F_u + v F_v = 2 F makes the chart Jacobian vanish exactly when the
    homogeneous partials do (given F = 0).
    """
    if evaluate(form, pt) % p != 0:
        raise ValueError("point is not on the surface mod p")
    return all(v % p == 0 for v in homogeneous_partials(form, pt))


_MONOMIALS = (
    # (coefficient slot, exponents of (x, r, y, s, z, t))
    (0, (2, 0, 2, 0, 2, 0)),
    (1, (2, 0, 2, 0, 0, 2)),
    (1, (2, 0, 0, 2, 2, 0)),
    (1, (0, 2, 2, 0, 2, 0)),
    (2, (1, 1, 1, 1, 1, 1)),
    (3, (2, 0, 0, 2, 0, 2)),
    (3, (0, 2, 2, 0, 0, 2)),
    (3, (0, 2, 0, 2, 2, 0)),
    (4, (0, 2, 0, 2, 0, 2)),
)


def _chart_polynomial(form: Mk3Form, chart: tuple[int, int, int]):
    """Monomials of the dehomogenized form on one of the 8 charts.

    chart[i] = 0 keeps the i-th pair finite ((u, 1), variable u = x_i) and
    chart[i] = 1 normalizes the first slot ((1, u), variable u = r_i).
    """
    coeffs = form.coefficients()
    out = []
    for slot, exps in _MONOMIALS:
        mono = tuple(exps[2 * i + chart[i]] for i in range(3))
        out.append((coeffs[slot], mono))
    return out


def _chart_singular_mask(monomials, p: int):
    """Boolean grid over F_p^3 where the chart polynomial and its three
    formal partials vanish simultaneously."""
    v = np.arange(p, dtype=np.int64)
    powers = [np.ones(p, dtype=np.int64), v % p, v * v % p]
    grids = np.meshgrid(v, v, v, indexing="ij")

    def accumulate(terms):
        acc = np.zeros((p, p, p), dtype=np.int64)
        for coeff, (e1, e2, e3) in terms:
            coeff %= p
            if coeff == 0:
                continue
            term = coeff * powers[e1][grids[0]]
            term = term * powers[e2][grids[1]] % p
            term = term * powers[e3][grids[2]] % p
            acc = (acc + term) % p
        return acc

    mask = accumulate(monomials) == 0
    for j in range(3):
        partial = []
        for coeff, exps in monomials:
            if exps[j] == 0:
                continue
            lowered = list(exps)
            lowered[j] -= 1
            partial.append((coeff * exps[j], tuple(lowered)))
        mask &= accumulate(partial) == 0
    return mask


def singular_points_mod_p(form: Mk3Form, p: int) -> list[TriprojPoint]:
    """Exhaustive singular locus of the reduction mod p over all 8 charts.

    Chart-level criterion with formal partial derivatives, so it is valid in
    every characteristic including 2.  Points are returned in a normalized
    projective form, deduplicated across overlapping charts.
    """
    if not is_probable_prime(p):
        raise ValueError("p must be prime")
    if p > SMOOTHNESS_EXHAUSTIVE_LIMIT:
        raise ExhaustiveBoundExceeded(
            f"exhaustive bound exceeded: p={p} > {SMOOTHNESS_EXHAUSTIVE_LIMIT}"
        )
    found = set()
    for chart_index in range(8):
        chart = ((chart_index >> 0) & 1, (chart_index >> 1) & 1, (chart_index >> 2) & 1)
        mask = _chart_singular_mask(_chart_polynomial(form, chart), p)
        for idx in zip(*np.nonzero(mask)):
            pairs = []
            for i in range(3):
                u = int(idx[i])
                pair = (u, 1) if chart[i] == 0 else (1, u)
                pairs.append(_normalize_pair_mod_p(pair, p))
            found.add(tuple(pairs))
    return [TriprojPoint(pairs) for pairs in sorted(found)]


def _normalize_pair_mod_p(pair, p: int):
    a, b = pair[0] % p, pair[1] % p
    if b != 0:
        return (a * pow(b, -1, p) % p, 1)
    return (1, 0)


def is_smooth_mod_p(form: Mk3Form, p: int) -> bool:
    """True iff no chart of the reduction mod p carries a singular point."""
    return not singular_points_mod_p(form, p)
