"""Frobenius characteristic polynomial from point counts, and Picard bounds.

Pipeline (all exact rational arithmetic, no floats):

  counts N_1..N_r over F_{p^n}
    -> traces on the twisted middle cohomology:  N_n/p^n - p^n - p^{-n}
    -> subtract the caller-supplied algebraic traces t_n
    -> Newton identities give e_1..e_r of the quotient characteristic poly
    -> the functional equation t^D f(1/t) = +-f(t) completes f
    -> counting root-of-unity factors bounds the Picard number above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import euler_phi

K3_BETTI_2 = 22


class SignAmbiguousError(ValueError):
    """Middle coefficient vanished: both functional-equation completions returned."""

    def __init__(self, completions):
        super().__init__("functional equation sign ambiguous (middle coefficient is 0)")
        self.completions = completions


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coefficients stored low degree first."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def descending(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))


@dataclass(frozen=True)
class TraceData:
    """Point counts plus the algebraic part of the Frobenius action.

    `algebraic_roots` lists (root, multiplicity) with every root +-1; the
    default (1,3),(-1,5) is the action on the eight divisor classes fixed or
    swapped in pairs by Frobenius.
    """

    p: int
    counts: tuple[int, ...]
    algebraic_roots: tuple[tuple[int, int], ...] = ((1, 3), (-1, 5))

    def __post_init__(self):
        for root, mult in self.algebraic_roots:
            if root not in (1, -1) or mult < 0:
                raise ValueError("algebraic part must have all roots +-1")
        deg_alg = self.algebraic_degree
        needed = (K3_BETTI_2 - deg_alg + 1) // 2
        if len(self.counts) < needed:
            raise ValueError(f"need at least {needed} counts, got {len(self.counts)}")

    @property
    def algebraic_degree(self) -> int:
        return sum(m for _, m in self.algebraic_roots)

    @property
    def quotient_degree(self) -> int:
        return K3_BETTI_2 - self.algebraic_degree


def algebraic_traces(algebraic_roots, r: int) -> list[int]:
    """Power sums of an integer polynomial whose roots are all +-1."""
    plus = minus = 0
    for root, mult in algebraic_roots:
        if root == 1:
            plus += mult
        elif root == -1:
            minus += mult
        else:
            raise ValueError(f"root {root} is not +-1")
    return [plus + ((-1) ** n) * minus for n in range(1, r + 1)]


def quotient_traces(data: TraceData) -> list[Fraction]:
    """Traces on the transcendental quotient of twisted H^2, exact rationals."""
    t = algebraic_traces(data.algebraic_roots, len(data.counts))
    p = data.p
    return [
        Fraction(N, p**n) - p**n - Fraction(1, p**n) - t[n - 1]
        for n, N in enumerate(data.counts, start=1)
    ]


def newton_partial_charpoly(s: list[Fraction], degree: int) -> list[Fraction]:
    """Elementary symmetric functions e_1..e_m from power sums via Newton.

    k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} s_i, with e_0 = 1.
    """
    if len(s) > degree:
        raise ValueError("more power sums than the degree allows")
    e = [Fraction(1)]
    for k in range(1, len(s) + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i - 1]
        e.append(acc / k)
    return e[1:]


def complete_functional_equation(partial_e: list[Fraction], degree: int = 14) -> CharPoly:
    """Fill in the upper half of f from t^D f(1/t) = +-f(t).

    The known coefficients are c_{D-k} = (-1)^k e_k for the supplied e's.  The
    sign is pinned by any index where both c_j and c_{D-j} are known and one
    is nonzero (for even D with exactly half the coefficients this is the
    middle one: nonzero forces +, since - would make it vanish).  If every
    overlap vanishes the sign is ambiguous and both completions are raised
    for the caller to inspect.
    """
    m = len(partial_e)
    if 2 * m < degree:
        raise ValueError(f"need at least e_1..e_{(degree + 1) // 2} to determine f")
    c: list = [None] * (degree + 1)
    c[degree] = Fraction(1)
    for k in range(1, m + 1):
        c[degree - k] = (-1) ** k * Fraction(partial_e[k - 1])
    sign = 0
    for j in range(degree - m, m + 1):
        lo, hi = c[j], c[degree - j]
        if lo is None or hi is None:
            continue
        if hi != 0:
            s = 1 if lo == hi else (-1 if lo == -hi else 0)
            if s == 0:
                raise ValueError("known coefficients violate the functional equation")
            if sign and s != sign:
                raise ValueError("inconsistent functional-equation signs")
            sign = s
        elif lo != 0:
            raise ValueError("known coefficients violate the functional equation")
    if sign == 0:
        completions = []
        for s in (1, -1):
            cc = list(c)
            for k in range(degree + 1):
                if cc[k] is None:
                    cc[k] = s * cc[degree - k]
            completions.append(tuple(cc))
        raise SignAmbiguousError(completions)
    for k in range(degree + 1):
        if c[k] is None:
            c[k] = sign * c[degree - k]
    ints = []
    for x in c:
        if x.denominator != 1:
            raise ValueError(f"completed polynomial has non-integer coefficient {x}")
        ints.append(int(x))
    return CharPoly(tuple(ints))


def _poly_divmod(num: list[int], den: list[int]):
    """Division of integer polynomials (descending coeffs), den monic."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(quot)):
        c = num[i]
        quot[i] = c
        if c:
            for j in range(dn + 1):
                num[i + j] -= c * den[j]
    rem = num[len(quot) :]
    while len(rem) > 1 and rem[0] == 0:
        rem.pop(0)
    return quot, rem


def cyclotomic(m: int, _cache={}) -> list[int]:
    """Coefficients (descending) of the m-th cyclotomic polynomial."""
    if m in _cache:
        return list(_cache[m])
    # (t^m - 1) divided by all proper cyclotomic divisors
    num = [1] + [0] * (m - 1) + [-1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, cyclotomic(d))
            assert rem == [0], "cyclotomic division must be exact"
    _cache[m] = tuple(num)
    return num


def count_unit_roots(f: CharPoly) -> int:
    """Total multiplicity of root-of-unity factors of f.

    Every m with phi(m) <= deg f satisfies m <= 2 deg(f)^2 because
    phi(m) >= sqrt(m/2); the loop runs to 3 deg^2 and asserts that no
    candidate appears beyond the proven range.
    """
    D = f.degree
    bound = 3 * D * D
    total = 0
    current = list(f.descending())
    for m in range(1, bound + 1):
        phi = euler_phi(m)
        if phi > D:
            continue
        assert m <= 2 * D * D, "phi(m) <= D beyond the proven range"
        phim = cyclotomic(m)
        while len(current) - 1 >= phi:
            quot, rem = _poly_divmod(current, phim)
            if rem != [0]:
                break
            total += phi
            current = quot
    return total


def picard_upper_bound(data: TraceData) -> int:
    """Degree of the algebraic part plus unit-root count of the quotient poly."""
    f = charpoly_from_counts(data)
    return data.algebraic_degree + count_unit_roots(f)


def charpoly_from_counts(data: TraceData) -> CharPoly:
    s = quotient_traces(data)
    degree = data.quotient_degree
    use = min(len(s), degree)
    e = newton_partial_charpoly(s[:use], degree)
    f = complete_functional_equation(e, degree)
    _weil_sanity(f, s[0])
    return f


def _weil_sanity(f: CharPoly, s1: Fraction) -> None:
    """Cheap necessary conditions for all roots on the unit circle."""
    D = f.degree
    desc = f.descending()
    binom = 1
    for k in range(D + 1):
        if k:
            binom = binom * (D - k + 1) // k
        if abs(desc[k]) > binom:
            raise ValueError(f"coefficient {desc[k]} of t^{D-k} violates the unit-circle bound")
    if f(Fraction(1)) < 0 or ((-1) ** D) * f(Fraction(-1)) < 0:
        raise ValueError("f(1), f(-1) must be nonnegative for conjugate unit roots")
    if -desc[1] != s1:
        raise ValueError("trace of the completed polynomial disagrees with s_1")
