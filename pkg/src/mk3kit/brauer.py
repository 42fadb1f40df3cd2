"""Hilbert symbols over Q_p and R, quaternion-class invariants, the mod-13
obstruction engine, and the Hasse-failure survey counts.

Local invariants live in {0, 1/2} inside Q/Z and are represented as exact
Fractions; sums are taken mod 1.  The obstructing classes for the square
family k = l^2 are (x +- 6, -km) and their y, z analogues; -km = 468 l^2 =
13 (6l)^2 differs from 13 by a square, so every invariant computation is
normalized to the second argument 13.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import is_probable_prime, legendre, primes_up_to, trial_factor
from .localsolve import f_value, search_solutions_mod

ZERO = Fraction(0)
HALF = Fraction(1, 2)

# 2^3 * 3 * 5 * 7 * 11 * 13 * 31 * 433 * 2017 * 3253 * 8501 * 32687 * 46649 * 4057231,
# kept factored so congruences are checked prime power by prime power
P_FACTORS = (
    (2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (31, 1), (433, 1),
    (2017, 1), (3253, 1), (8501, 1), (32687, 1), (46649, 1), (4057231, 1),
)
P_MODULUS = 1
for _p, _e in P_FACTORS:
    P_MODULUS *= _p**_e

OBSTRUCTION_PRIME = 13


@dataclass(frozen=True)
class QuaternionClass:
    """(coordinate shifted by +-6, t) or (coordinate^2 - 36, t), t != 0."""

    coordinate: str  # 'x', 'y' or 'z'
    shift: int | None  # -6 or +6, None for the quadratic descriptor
    second: int

    def __post_init__(self):
        if self.coordinate not in ("x", "y", "z"):
            raise ValueError("coordinate must be x, y or z")
        if self.shift not in (None, -6, 6):
            raise ValueError("shift must be -6 or +6 (None for coordinate^2 - 36)")
        if self.second == 0:
            raise ValueError("second entry must be nonzero")

    def label(self) -> str:
        if self.shift is None:
            return f"({self.coordinate}^2-36, {self.second})"
        op = "-" if self.shift < 0 else "+"
        return f"({self.coordinate}{op}6, {self.second})"

    def first_argument(self, point) -> int:
        value = point["xyz".index(self.coordinate)]
        if self.shift is None:
            return value * value - 36
        return value + self.shift


def six_classes(second: int = OBSTRUCTION_PRIME) -> tuple[QuaternionClass, ...]:
    return tuple(
        QuaternionClass(coord, shift, second)
        for coord in ("x", "y", "z")
        for shift in (-6, 6)
    )


def _split_valuation(a: Fraction, p: int) -> tuple[int, Fraction]:
    v = 0
    num, den = a.numerator, a.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _unit_mod(u: Fraction, modulus: int) -> int:
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def hilbert_symbol(a, b, place) -> Fraction:
    """Additive local invariant of the quaternion algebra (a, b).

    0 iff z^2 = a x^2 + b y^2 has a nontrivial solution over the completion.
    `place` is a prime or the string 'real'.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    if place == "real" or place is None:
        return HALF if a < 0 and b < 0 else ZERO
    p = int(place)
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p != 2:
        sign = 1
        if alpha * beta % 2 and (p - 1) // 2 % 2:
            sign = -sign
        if beta % 2:
            sign *= legendre(_unit_mod(u, p), p)
        if alpha % 2:
            sign *= legendre(_unit_mod(v, p), p)
        return ZERO if sign == 1 else HALF
    u8, v8 = _unit_mod(u, 8), _unit_mod(v, 8)
    eps_u, eps_v = (u8 - 1) // 2 % 2, (v8 - 1) // 2 % 2
    omega_u, omega_v = (u8 * u8 - 1) // 8 % 2, (v8 * v8 - 1) // 8 % 2
    exponent = eps_u * eps_v + alpha * omega_v + beta * omega_u
    return ZERO if exponent % 2 == 0 else HALF


def product_formula_check(a, b) -> bool:
    """Sum of local invariants over the reals and all relevant primes is 0."""
    a, b = Fraction(a), Fraction(b)
    relevant = {2}
    for value in (a.numerator, a.denominator, b.numerator, b.denominator):
        factors, cof = trial_factor(value, 10**6)
        if cof != 1:
            raise ValueError(f"cannot factor {value} for the product formula")
        relevant.update(factors)
    total = hilbert_symbol(a, b, "real")
    for p in relevant:
        total += hilbert_symbol(a, b, p)
    return total % 1 == 0


def obstruction_mod13_core(k_mod_13: int = 1) -> bool:
    """Exhaustive mod-13 engine behind the obstruction.

    For k = 1 mod 13 the equation reduces to (x^2-36)(y^2-36)(z^2-36) = 1, so
    every factor is a unit; the obstruction needs every solution to expose at
    least one of the six shifted coordinates as a quadratic non-residue, which
    makes the corresponding class invariant 1/2 at 13.
    """
    if k_mod_13 % 13 != 1:
        raise ValueError("the reduction step needs k = 1 mod 13")
    p = OBSTRUCTION_PRIME
    ok = True
    found = 0
    for x in range(p):
        for y in range(p):
            for z in range(p):
                prod = (x * x - 36) * (y * y - 36) * (z * z - 36) % p
                if prod != k_mod_13 % p:
                    continue
                found += 1
                if any((w * w - 36) % p == 0 for w in (x, y, z)):
                    return False  # cannot happen: the product is a unit
                if not any(
                    legendre(w + s, p) == -1 for w in (x, y, z) for s in (-6, 6)
                ):
                    ok = False
    return ok and found > 0


def mod13_invariant_table(k_mod_13: int = 1) -> list[dict]:
    """Per-solution invariants of the six classes at p = 13.

    For a unit argument the invariant at 13 is 1/2 exactly when the residue
    is a non-square, since v_13(13) = 1 and v_13(arg) = 0.
    """
    p = OBSTRUCTION_PRIME
    rows = []
    for x in range(p):
        for y in range(p):
            for z in range(p):
                prod = (x * x - 36) * (y * y - 36) * (z * z - 36) % p
                if prod != k_mod_13 % p:
                    continue
                invs = []
                for cls in six_classes():
                    arg = cls.first_argument((x, y, z)) % p
                    invs.append(HALF if legendre(arg, p) == -1 else ZERO)
                witness = next((i for i, v in enumerate(invs) if v == HALF), None)
                rows.append({"point": (x, y, z), "invariants": invs, "witness": witness})
    return rows


@dataclass
class InvariantTranscript:
    k: int
    classes: tuple[str, ...]
    zero_places: dict[str, str]
    mod13_rows: list[dict]

    def to_dict(self) -> dict:
        return {
            "k": str(self.k),
            "classes": list(self.classes),
            "places": {
                "13": [
                    {
                        "point": [str(c) for c in row["point"]],
                        "invariants": [str(v) for v in row["invariants"]],
                        "witness_class": self.classes[row["witness"]],
                    }
                    for row in self.mod13_rows
                ],
                **{place: reason for place, reason in self.zero_places.items()},
            },
            "verdict": "obstructed",
        }


@dataclass
class BmVerdict:
    status: str  # obstructed | hypotheses_unmet
    reason: str = ""
    transcript: InvariantTranscript | None = None

    def to_dict(self) -> dict:
        out = {"verdict": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.transcript is not None:
            out["transcript"] = self.transcript.to_dict()
        return out


def _unit_coordinate_check(k: int, modulus: int, p: int) -> bool:
    """Every solution mod `modulus` has all coordinates invertible mod p."""
    for x, y, z in search_solutions_mod(k, modulus):
        if x % p == 0 or y % p == 0 or z % p == 0:
            return False
    return True


def bm_verdict(ell: int, factor_bound: int = 10**7) -> BmVerdict:
    """Obstruction verdict for k = ell^2.

    The hypotheses are checked literally: ell > 1, ell = 1 mod every prime
    power in P, and every prime divisor p of ell splits in Q(sqrt(13)), i.e.
    legendre(13, p) = 1 (this is the vanishing of (p, 13)_p).  The engine part
    re-verifies the exhaustive mod-13 analysis and the unit-coordinate checks
    at 2 and 3.  An incompletely factored ell is refused rather than asserted.
    """
    if ell <= 1:
        return BmVerdict("hypotheses_unmet", f"ell = {ell} is not > 1")
    for p, e in P_FACTORS:
        if ell % p**e != 1:
            return BmVerdict("hypotheses_unmet", f"ell is not 1 mod {p}^{e}")
    factors, cofactor = trial_factor(ell, factor_bound)
    if cofactor != 1:
        return BmVerdict("hypotheses_unmet", f"unfactored cofactor {cofactor} of ell")
    for p in factors:
        if p == 2 or p == OBSTRUCTION_PRIME:
            return BmVerdict("hypotheses_unmet", f"prime divisor {p} violates the symbol condition")
        if legendre(OBSTRUCTION_PRIME, p) != 1:
            return BmVerdict("hypotheses_unmet", f"legendre(13, {p}) != 1")
    k = ell * ell
    if not obstruction_mod13_core(k % 13):
        return BmVerdict("hypotheses_unmet", "mod-13 engine failed")
    if not _unit_coordinate_check(k, 8, 2):
        return BmVerdict("hypotheses_unmet", "a solution mod 8 has an even coordinate")
    if not _unit_coordinate_check(k, 3, 3):
        return BmVerdict("hypotheses_unmet", "a solution mod 3 has a coordinate divisible by 3")
    classes = tuple(cls.label() for cls in six_classes())
    transcript = InvariantTranscript(
        k=k,
        classes=classes,
        zero_places={
            "real": "13 > 0, so (w, 13) is locally split for every real w",
            "2": "all coordinates are 2-adic units and 13 = 1 mod 4",
            "3": "all coordinates are 3-adic units and 13 is a square mod 3",
            "p|ell": "legendre(13, p) = 1 for every prime divisor of ell",
            "other": "arguments are norms from Q(sqrt(13)) up to even valuations",
        },
        mod13_rows=mod13_invariant_table(k % 13),
    )
    return BmVerdict("obstructed", "", transcript)


def survey_counts(M: int, modulus: int) -> tuple[int, int]:
    """(count of k <= M in the progression, count of obstructed square k).

    The first count is the closed-form size of {k : 1 <= k <= M, k = 1 mod
    modulus}.  The second sieves primes l with l^2 <= M, l = 1 mod modulus and
    legendre(13, l) = 1; each gives an obstructed k = l^2.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    count_local = (M - 1) // modulus + 1 if M >= 1 else 0
    import math

    count_obstructed = 0
    for ell in primes_up_to(math.isqrt(M)):
        if ell == 2 or ell == OBSTRUCTION_PRIME:
            continue
        if ell % modulus != 1 % modulus:
            continue
        if legendre(OBSTRUCTION_PRIME, ell) == 1:
            count_obstructed += 1
    return count_local, count_obstructed
