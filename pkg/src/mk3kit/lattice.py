"""Intersection lattices of the rank-8 Picard group and half-class analysis.

The built-in data describes the Neron-Severi lattice of the smooth members of
the sextuple-product family: three fiber classes D1, D2, D3 and the components
C_i^{s,t} of the singular fibers over the points with i-th coordinate +-6
(first sign s) and a chosen square-root branch (second sign t).  The relations

    D_i = C_i^{++} + C_i^{+-} = C_i^{-+} + C_i^{--}           (i = 1,2,3)
    D1 + D2 + D3 = C1^{++} + C1^{-+} + C2^{++} + C2^{-+} + C3^{++} + C3^{-+}

express every class over the eight-element basis

    S = (D1, D2, D3, C1++, C1-+, C2++, C2-+, C3++).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import det_bareiss, det_cofactor, mat_vec, smith_normal_form

S_BASIS_NAMES = ("D1", "D2", "D3", "C1++", "C1-+", "C2++", "C2-+", "C3++")
SPRIME_BASIS_NAMES = ("D1", "D2", "D3", "C1++", "S1", "C2++", "S2", "C3++")

_GRAM_S = (
    (0, 2, 2, 0, 0, 1, 1, 1),
    (2, 0, 2, 1, 1, 0, 0, 1),
    (2, 2, 0, 1, 1, 1, 1, 0),
    (0, 1, 1, -2, 0, 1, 1, 1),
    (0, 1, 1, 0, -2, 1, 1, 1),
    (1, 0, 1, 1, 1, -2, 0, 1),
    (1, 0, 1, 1, 1, 0, -2, 1),
    (1, 1, 0, 1, 1, 1, 1, -2),
)


@dataclass(frozen=True)
class GramLattice:
    names: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    k3: bool = False

    def __post_init__(self):
        r = len(self.gram)
        if len(self.names) != r or any(len(row) != r for row in self.gram):
            raise ValueError("gram matrix must be square and match the name list")
        for i in range(r):
            for j in range(r):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        if self.k3:
            for i in range(r):
                if self.gram[i][i] % 2 != 0:
                    raise ValueError("K3 intersection form must be even on the diagonal")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.gram]


@dataclass(frozen=True)
class HalfClassReport:
    """One {0,1}-vector v whose half 1/2 v pairs integrally with the basis."""

    vector: tuple[int, ...]
    integral_pairing: bool
    self_intersection: Fraction  # of (1/2) v
    verdict: str


def builtin_gram_S() -> GramLattice:
    return GramLattice(S_BASIS_NAMES, _GRAM_S, k3=True)


def _sprime_change_of_basis() -> list[list[Fraction]]:
    """Columns express the S' basis vectors in S coordinates."""
    T = [[Fraction(1 if i == j else 0) for j in range(8)] for i in range(8)]
    for i in range(8):
        T[i][4] = Fraction(0)
        T[i][6] = Fraction(0)
    for i in (0, 1, 2, 3, 4):  # S1 = (D1+D2+D3+C1+++C1-+)/2
        T[i][4] = Fraction(1, 2)
    for i in (0, 1, 2, 5, 6):  # S2 = (D1+D2+D3+C2+++C2-+)/2
        T[i][6] = Fraction(1, 2)
    return T


def builtin_gram_Sprime() -> GramLattice:
    """Gram matrix after refining S by the half classes S1, S2 (bilinearity)."""
    T = _sprime_change_of_basis()
    G = _GRAM_S
    out = []
    for i in range(8):
        row = []
        for j in range(8):
            acc = Fraction(0)
            for u in range(8):
                if T[u][i] == 0:
                    continue
                for v in range(8):
                    if T[v][j] != 0:
                        acc += T[u][i] * G[u][v] * T[v][j]
            if acc.denominator != 1:
                raise AssertionError("refined pairing must stay integral")
            row.append(int(acc))
        out.append(tuple(row))
    return GramLattice(SPRIME_BASIS_NAMES, tuple(out), k3=True)


def det(obj) -> int:
    """Exact determinant of a GramLattice or plain integer matrix."""
    M = obj.matrix() if isinstance(obj, GramLattice) else [list(r) for r in obj]
    d = det_bareiss(M)
    if len(M) <= 8:
        assert d == det_cofactor(M), "determinant cross-check failed"
    return d


def snf(M) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix."""
    D, _, _ = smith_normal_form([list(r) for r in M])
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i] != 0]


def snf_with_transforms(M):
    return smith_normal_form([list(r) for r in M])


def half_class_scan(lat: GramLattice) -> list[HalfClassReport]:
    """All nonzero v in {0,1}^r with (1/2)v pairing integrally with the basis.

    Candidates are the kernel of G mod 2.  A candidate is excluded outright
    when the self-intersection of (1/2)v is not an even integer, which is the
    parity obstruction to membership in an even lattice.
    """
    r = lat.rank
    if r > 20:
        raise ValueError("half-class scan is a 2^r enumeration; rank > 20 refused")
    G = lat.matrix()
    reports = []
    for bits in range(1, 1 << r):
        v = [(bits >> i) & 1 for i in range(r)]
        Gv = mat_vec(G, v)
        if any(x % 2 for x in Gv):
            continue
        self_int = Fraction(sum(v[i] * Gv[i] for i in range(r)), 4)
        even = self_int.denominator == 1 and self_int.numerator % 2 == 0
        verdict = "survives-parity" if even else "excluded-odd-self-intersection"
        reports.append(HalfClassReport(tuple(v), True, self_int, verdict))
    return reports


def sublattice_index(det_sub: int, det_super: int) -> int:
    """Index from the square factor between the two discriminants."""
    if det_super == 0:
        raise ValueError("overlattice determinant must be nonzero")
    ratio = Fraction(det_sub, det_super)
    if ratio <= 0:
        raise ValueError("determinants must have the same sign")
    num, den = ratio.numerator, ratio.denominator
    import math

    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den or Fraction(rn, rd).denominator != 1:
        raise ValueError(f"discriminant ratio {ratio} is not a perfect square")
    return rn // rd


def parse_gram(text: str, names: tuple[str, ...] | None = None, k3: bool = False) -> GramLattice:
    """Plain text matrix: one row per line, whitespace-separated integers."""
    rows = []
    for line in text.strip().splitlines():
        line = line.split("#")[0].strip()
        if line:
            rows.append(tuple(int(tok) for tok in line.split()))
    if names is None:
        names = tuple(f"v{i+1}" for i in range(len(rows)))
    return GramLattice(names, tuple(rows), k3=k3)


def format_gram(lat: GramLattice) -> str:
    width = max(len(str(x)) for row in lat.gram for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in lat.gram)


# ---- divisor-class bookkeeping over the S basis ----

def _e(i: int) -> list[int]:
    return [1 if j == i else 0 for j in range(8)]


def _lin(*terms) -> tuple[int, ...]:
    acc = [0] * 8
    for coeff, vec in terms:
        for i in range(8):
            acc[i] += coeff * vec[i]
    return tuple(acc)


def divisor_classes() -> dict[str, tuple[int, ...]]:
    """All twelve fiber-component classes and D_i in S coordinates."""
    D1, D2, D3 = _e(0), _e(1), _e(2)
    C1pp, C1mp, C2pp, C2mp, C3pp = _e(3), _e(4), _e(5), _e(6), _e(7)
    sigma_total = _lin((1, D1), (1, D2), (1, D3))
    C3mp = _lin((1, sigma_total), (-1, C1pp), (-1, C1mp), (-1, C2pp), (-1, C2mp), (-1, C3pp))
    classes = {
        "D1": tuple(D1), "D2": tuple(D2), "D3": tuple(D3),
        "C1++": tuple(C1pp), "C1-+": tuple(C1mp),
        "C2++": tuple(C2pp), "C2-+": tuple(C2mp),
        "C3++": tuple(C3pp), "C3-+": C3mp,
        "C1+-": _lin((1, D1), (-1, C1pp)),
        "C1--": _lin((1, D1), (-1, C1mp)),
        "C2+-": _lin((1, D2), (-1, C2pp)),
        "C2--": _lin((1, D2), (-1, C2mp)),
        "C3+-": _lin((1, D3), (-1, C3pp)),
        "C3--": _lin((1, D3), (-1, C3mp)),
    }
    return classes


def fiber_sum_relation_vector() -> tuple[int, ...]:
    """D1+D2+D3 - (C1++ + C1-+ + C2++ + C2-+ + C3++ + C3-+) in S coordinates."""
    cl = divisor_classes()
    return _lin(
        (1, cl["D1"]), (1, cl["D2"]), (1, cl["D3"]),
        (-1, cl["C1++"]), (-1, cl["C1-+"]),
        (-1, cl["C2++"]), (-1, cl["C2-+"]),
        (-1, cl["C3++"]), (-1, cl["C3-+"]),
    )


def galois_involution_matrix() -> list[list[int]]:
    """Square-root conjugation on the S basis: fixes D_i, sends C_i^{s,t} to
    C_i^{s,-t} = D_i - C_i^{s,t}."""
    cl = divisor_classes()
    images = [
        cl["D1"], cl["D2"], cl["D3"],
        cl["C1+-"], cl["C1--"],
        cl["C2+-"], cl["C2--"],
        cl["C3+-"],
    ]
    return [[images[j][i] for j in range(8)] for i in range(8)]


def _coordinate_symmetry_images(signs, perm) -> list[tuple[int, ...]]:
    """Action of one (signs, permutation) symmetry on the class labels.

    A sign flip of coordinate i swaps the first superscript of C_i (the fiber
    over +6 moves to -6); the branch superscript is untouched because an even
    number of coordinates change sign.  A permutation relabels the subscript.
    """
    cl = divisor_classes()

    def image_name(name: str) -> str:
        if name.startswith("D"):
            i = int(name[1]) - 1
            return f"D{perm.index(i) + 1}"
        i = int(name[1]) - 1
        s, t = name[2], name[3]
        if signs[i] == -1:
            s = "+" if s == "-" else "-"
        return f"C{perm.index(i) + 1}{s}{t}"

    return [cl[image_name(name)] for name in S_BASIS_NAMES]


def coordinate_symmetry_matrices() -> list[list[list[int]]]:
    """The 24 symmetry actions on the S basis as integer matrices."""
    from .forms import symmetry_group

    out = []
    for signs, perm in symmetry_group():
        images = _coordinate_symmetry_images(signs, perm)
        out.append([[images[j][i] for j in range(8)] for i in range(8)])
    return out


def second_stage_filter(reports: list[HalfClassReport]) -> list[HalfClassReport]:
    """Refine parity survivors by the recorded symmetry and Galois actions.

    A survivor v is excluded when (1/2)(v + sigma(v)) reduces, mod the integer
    lattice, to a parity-excluded candidate: membership of (1/2)v in the
    Picard lattice would force the Galois-stable sum in as well.  The rule is
    propagated around the coordinate-symmetry orbits.  The remaining
    survivors are the candidates that genuinely refine the lattice (they are
    absorbed by passing from basis S to S').
    """
    sigma = galois_involution_matrix()
    sym = coordinate_symmetry_matrices()
    by_vec = {r.vector: r for r in reports}
    excluded_parity = {r.vector for r in reports if r.verdict == "excluded-odd-self-intersection"}

    def mod2(vec) -> tuple[int, ...]:
        return tuple(x % 2 for x in vec)

    galois_excluded = set()
    changed = True
    while changed:
        changed = False
        for r in reports:
            v = r.vector
            if v in excluded_parity or v in galois_excluded:
                continue
            w = mod2([a + b for a, b in zip(v, mat_vec(sigma, list(v)))])
            if any(w) and (w in excluded_parity or w in galois_excluded):
                galois_excluded.add(v)
                changed = True
                continue
            for g in sym:
                gv = mod2(mat_vec(g, list(v)))
                if gv in excluded_parity or gv in galois_excluded:
                    galois_excluded.add(v)
                    changed = True
                    break
    out = []
    for r in reports:
        if r.verdict == "excluded-odd-self-intersection":
            out.append(r)
        elif r.vector in galois_excluded:
            out.append(HalfClassReport(r.vector, r.integral_pairing, r.self_intersection,
                                       "excluded-galois-symmetry"))
        else:
            out.append(HalfClassReport(r.vector, r.integral_pairing, r.self_intersection,
                                       "refinement-candidate"))
    return out
