"""Rational points and dynamics on the symmetric surfaces.

Three layers:

* an exact elliptic-curve layer for V^2 = U^3 + (4-2m) U^2 + m^2 U, the
  Weierstrass model of the fiber at z = infinity of the product family, with
  the explicit non-torsion seed point available for m = 3l(1-l);
* Vieta involutions (root swapping on fiber quadratics) and breadth-first
  orbit exploration under the involutions and the 24 coordinate symmetries;
* the complete integral-point solver driven by the rewriting

      A (b x^2 + d)(b y^2 + d)(b z^2 + d) = k* - (2b(ad - b^2) xyz + bcd)^2

  with A = 4b(ad - b^2) and k* = 4bd(ad - b^2)(d^2 - be) + b^2 c^2 d^2.  (The
  sign on the square term follows from completing the square on bd times the
  original equation; the xyz = 0 branch reduces to the divisor-bounded
  equation (b x^2 + d)(b y^2 + d) = d^2 - be.)
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import ceil_div, ceil_sqrt_ratio
from .forms import (
    Mk3Form,
    TriprojPoint,
    evaluate,
    fiber_quadratic,
    is_nondegenerate,
    symmetry_group,
    apply_symmetry,
)


class ExceptionalLocusError(ValueError):
    """A birational map was evaluated on its blown-down configuration."""


@dataclass(frozen=True)
class EllipticCurveQ:
    """V^2 = U^3 + alpha U^2 + beta U with alpha = 4 - 2m, beta = m^2."""

    m: int

    @property
    def alpha(self) -> int:
        return 4 - 2 * self.m

    @property
    def beta(self) -> int:
        return self.m * self.m

    def discriminant_nonzero(self) -> bool:
        # roots of U(U^2 + alpha U + beta): distinct iff beta != 0 and alpha^2 != 4 beta
        return self.beta != 0 and self.alpha * self.alpha != 4 * self.beta

    def contains(self, pt) -> bool:
        if pt is None:
            return True
        U, V = pt
        return V * V == U**3 + self.alpha * U * U + self.beta * U


# points are (U, V) pairs of Fractions; None is the point at infinity


def _require_on_curve(curve: EllipticCurveQ, pt) -> None:
    if not curve.contains(pt):
        raise ValueError(f"point {pt} is not on {curve}")


def ec_neg(curve: EllipticCurveQ, pt):
    if pt is None:
        return None
    return (pt[0], -pt[1])


def ec_add(curve: EllipticCurveQ, P, Q):
    """Chord-tangent addition with the point at infinity as identity."""
    _require_on_curve(curve, P)
    _require_on_curve(curve, Q)
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = Fraction(P[0]), Fraction(P[1])
    x2, y2 = Fraction(Q[0]), Fraction(Q[1])
    if x1 == x2 and y1 == -y2:
        return None
    if (x1, y1) == (x2, y2):
        lam = (3 * x1 * x1 + 2 * curve.alpha * x1 + curve.beta) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - curve.alpha - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def ec_double(curve: EllipticCurveQ, P):
    return ec_add(curve, P, P)


def ec_multiply(curve: EllipticCurveQ, n: int, P):
    if n < 0:
        return ec_multiply(curve, -n, ec_neg(curve, P))
    acc = None
    add = P
    while n:
        if n & 1:
            acc = ec_add(curve, acc, add)
        add = ec_add(curve, add, add)
        n >>= 1
    return acc


def seed_point(ell: int) -> tuple[EllipticCurveQ, tuple[Fraction, Fraction]]:
    """The explicit rational point on the m = 3l(1-l) member.

    (U, V) = (9/4 (2l-1)^2, 9/8 (2l-1)(16l^2 - 16l + 5)); rejected for
    l in {0, 1} where m degenerates to 0.
    """
    if ell in (0, 1):
        raise ValueError("l = 0, 1 give m = 0 and a singular cubic")
    m = 3 * ell * (1 - ell)
    curve = EllipticCurveQ(m)
    U = Fraction(9, 4) * (2 * ell - 1) ** 2
    V = Fraction(9, 8) * (2 * ell - 1) * (16 * ell * ell - 16 * ell + 5)
    pt = (U, V)
    if not curve.contains(pt):
        raise AssertionError("seed point fails the curve equation")
    return curve, pt


def infinite_order_certificate(curve: EllipticCurveQ, P) -> bool:
    """Non-torsion test: non-integral coordinates settle it (torsion points of
    an integral model have integer coordinates); otherwise the first sixteen
    multiples must be distinct and finite."""
    if P is None:
        return False
    _require_on_curve(curve, P)
    U, V = Fraction(P[0]), Fraction(P[1])
    if U.denominator != 1 or V.denominator != 1:
        return True
    seen = set()
    Q = P
    for _ in range(16):
        if Q is None:
            return False
        if Q in seen:
            return False
        seen.add(Q)
        Q = ec_add(curve, Q, P)
    return True


def weierstrass_to_fiber(pt, A: int, m: int) -> tuple[Fraction, Fraction]:
    """Map a Weierstrass point to the fiber at z = infinity.

    (U, V) -> (u, v) = (U/m, V/m) -> (X, Y) = (2u/v, (u-1)/(u+1)) ->
    (x, y) = (AX, AY), landing on (x^2 - A^2)(y^2 - A^2) = m x^2 y^2.
    """
    if pt is None:
        raise ExceptionalLocusError("the point at infinity is blown down")
    U, V = Fraction(pt[0]), Fraction(pt[1])
    if V == 0:
        raise ExceptionalLocusError("V = 0: two-torsion fiber is blown down")
    u, v = U / m, V / m
    if u == -1:
        raise ExceptionalLocusError("u = -1: the Y map has a pole")
    X = 2 * u / v
    Y = (u - 1) / (u + 1)
    x, y = A * X, A * Y
    if (x * x - A * A) * (y * y - A * A) != m * x * x * y * y:
        raise AssertionError("image does not satisfy the fiber equation")
    return x, y


def fiber_to_weierstrass(x, y, A: int, m: int):
    """Inverse map; errors on the blown-down loci Y = 1 and X = 0."""
    X, Y = Fraction(x, A), Fraction(y, A)
    if Y == 1:
        raise ExceptionalLocusError("Y = 1 is blown down")
    if X == 0:
        raise ExceptionalLocusError("X = 0 is blown down")
    u = (1 + Y) / (1 - Y)
    v = 2 * u / X
    return (m * u, m * v)


def fiber_point_to_surface(x, y) -> TriprojPoint:
    """Embed a z = infinity fiber point into P1 x P1 x P1."""
    return TriprojPoint(((Fraction(x), Fraction(1)), (Fraction(y), Fraction(1)),
                         (Fraction(1), Fraction(0))))


# ---------------------------------------------------------------------------
# Vieta involutions and orbits


def _other_root(alpha, beta, gamma, w, u):
    """The second root of alpha t^2 + beta t u + gamma u^2 given one root."""
    if alpha == 0 and beta == 0 and gamma == 0:
        raise ValueError("identically zero fiber quadratic (degenerate surface)")
    if alpha != 0:
        if w != 0:
            return (gamma * u, alpha * w)  # product of roots
        return (-beta, alpha)  # sum of roots from the root at 0
    if beta != 0:
        return (-gamma, beta) if u == 0 else (1, 0)
    return (w, u)  # double root at infinity


def vieta_involution(form: Mk3Form, pt: TriprojPoint, axis: int,
                     mod: int | None = None) -> TriprojPoint:
    """Swap the two points of the fiber through pt along the given axis.

    With `mod` set, coordinates are treated as residues and the on-surface
    assertion is taken mod that prime; otherwise arithmetic is exact.
    """
    base = tuple(pt.pairs[i] for i in range(3) if i != axis - 1)
    alpha, beta, gamma = fiber_quadratic(form, axis, base)
    if mod is not None:
        alpha, beta, gamma = alpha % mod, beta % mod, gamma % mod
    w, u = pt.pairs[axis - 1]
    w2, u2 = _other_root(alpha, beta, gamma, w, u)
    if mod is not None:
        w2, u2 = w2 % mod, u2 % mod
        if w2 == 0 and u2 == 0:
            raise ValueError("root pair collapsed mod p; pick another representative")
    pairs = list(pt.pairs)
    pairs[axis - 1] = (w2, u2)
    out = TriprojPoint(tuple(pairs))
    value = evaluate(form, out)
    if (value % mod if mod is not None else value) != 0:
        raise AssertionError("involution left the surface")
    return out


def point_height(pt: TriprojPoint) -> int:
    """Product over the pairs of max(|a|, |b|) after primitive normalization."""
    h = 1
    for a, b in pt.canonical().pairs:
        h *= max(abs(a), abs(b))
    return h


@dataclass
class OrbitState:
    points: set = field(default_factory=set)
    frontier: deque = field(default_factory=deque)
    steps: int = 0
    truncated_by_height: int = 0

    def fibers_per_axis(self) -> tuple[int, int, int]:
        return tuple(len({pt.pairs[axis] for pt in self.points}) for axis in range(3))


def orbit_explore(form: Mk3Form, seed: TriprojPoint, height_bound: int,
                  step_bound: int) -> OrbitState:
    """Breadth-first closure of the seed under the three involutions and the
    24 coordinate symmetries, keeping points of height at most the bound."""
    if evaluate(form, seed) != 0:
        raise ValueError("seed is not on the surface")
    state = OrbitState()
    start = seed.canonical()
    state.points.add(start)
    state.frontier.append(start)
    while state.frontier and state.steps < step_bound:
        pt = state.frontier.popleft()
        state.steps += 1
        images = []
        for axis in (1, 2, 3):
            images.append(vieta_involution(form, pt, axis))
        for signs, perm in symmetry_group():
            images.append(apply_symmetry(signs, perm, pt))
        for img in images:
            canon = img.canonical()
            if canon in state.points:
                continue
            if point_height(canon) > height_bound:
                state.truncated_by_height += 1
                continue
            state.points.add(canon)
            state.frontier.append(canon)
    return state


# ---------------------------------------------------------------------------
# complete integral points


def rewrite_constants(form: Mk3Form) -> tuple[int, int]:
    """A = 4b(ad - b^2) and k* from the completed-square rewriting."""
    a, b, c, d, e = form.coefficients()
    A = 4 * b * (a * d - b * b)
    kstar = 4 * b * d * (a * d - b * b) * (d * d - b * e) + b * b * c * c * d * d
    return A, kstar


def integral_box_bound(form: Mk3Form) -> int:
    """Enumeration bound for the xyz != 0 branch.

    When |xyz| exceeds every one of 12|b|/|a|, 4|c|/|a|, 12|d|/|a|, the
    triangle inequality leaves |a| x^2y^2z^2 / 4 <= |e|, so |xyz| (and hence
    each coordinate) is at most the ceiling of the maximum of the four
    quantities.
    """
    a, b, c, d, e = (abs(v) for v in form.coefficients())
    return max(
        ceil_div(12 * b, a),
        ceil_div(4 * c, a),
        ceil_div(12 * d, a),
        ceil_sqrt_ratio(4 * e, a),
        1,
    )


def _coordinate_plane_solutions(form: Mk3Form) -> set:
    """Solutions with z = 0 via (b x^2 + d)(b y^2 + d) = d^2 - be, plus the
    coordinate permutations and sign changes (the z = 0 slice is even in each
    variable separately)."""
    a, b, c, d, e = form.coefficients()
    rhs = d * d - b * e
    out = set()
    if rhs == 0:
        # excluded by non-degeneracy; kept for the contract's error path
        raise ValueError("d^2 = be: the coordinate-plane equation degenerates")
    x_sq_bound = (abs(rhs) + abs(d)) // abs(b)
    x = 0
    while x * x <= x_sq_bound:
        lhs = b * x * x + d
        if lhs != 0 and rhs % lhs == 0:
            rem = rhs // lhs - d
            if rem % b == 0 and rem // b >= 0:
                y2 = rem // b
                y = math.isqrt(y2)
                if y * y == y2:
                    out.add((x, y, 0))
        x += 1
    full = set()
    for x, y, _ in out:
        for sx in (x, -x):
            for sy in (y, -y):
                for triple in ((sx, sy, 0), (sx, 0, sy), (0, sx, sy)):
                    if evaluate_affine_int(form, *triple) == 0:
                        full.add(triple)
    return full


def evaluate_affine_int(form: Mk3Form, x: int, y: int, z: int) -> int:
    a, b, c, d, e = form.coefficients()
    return (a * x * x * y * y * z * z
            + b * (x * x * y * y + x * x * z * z + y * y * z * z)
            + c * x * y * z
            + d * (x * x + y * y + z * z) + e)


def integral_points_complete(form: Mk3Form) -> set:
    """The full finite set of integer solutions of the affine equation.

    Requires all five coefficients nonzero (and effectively non-degeneracy,
    which keeps the coordinate-plane branch finite).  The xyz = 0 branch is
    solved by divisor enumeration; the xyz != 0 branch enumerates the box
    given by `integral_box_bound` and solves the fiber quadratic in z exactly
    for each (x, y).
    """
    if any(v == 0 for v in form.coefficients()):
        raise ValueError("all coefficients must be nonzero")
    a, b, c, d, e = form.coefficients()
    solutions = _coordinate_plane_solutions(form)
    B = integral_box_bound(form)
    for x in range(1, B + 1):
        for y in range(x, B + 1):  # x <= y; symmetry closure restores the rest
            # quadratic in z for each sign pattern of (x, y)
            Az = a * x * x * y * y + b * (x * x + y * y) + d
            Cz = b * x * x * y * y + d * (x * x + y * y) + e
            for sx, sy in ((x, y), (x, -y)):
                Bz = c * sx * sy
                for z in _integer_quadratic_roots(Az, Bz, Cz):
                    if z != 0:
                        solutions.add((sx, sy, z))
    solutions = _symmetry_closure(solutions)
    for triple in solutions:
        if evaluate_affine_int(form, *triple) != 0:
            raise AssertionError("solver produced a non-solution")
    return solutions


def _symmetry_closure(solutions: set) -> set:
    """Close a solution set under permutations and even sign changes."""
    from itertools import permutations

    closed = set()
    for x, y, z in solutions:
        for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
            flipped = (signs[0] * x, signs[1] * y, signs[2] * z)
            for perm in permutations(flipped):
                closed.add(perm)
    return closed


def _integer_quadratic_roots(a2: int, a1: int, a0: int) -> list[int]:
    if a2 == 0:
        if a1 == 0:
            return []  # a0 == 0 would mean a z-line of solutions; cannot happen
        return [-a0 // a1] if a0 % a1 == 0 else []
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    r = math.isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for sign in (1, -1) if r else (1,):
        num = -a1 + sign * r
        if num % (2 * a2) == 0:
            out.append(num // (2 * a2))
    return out
