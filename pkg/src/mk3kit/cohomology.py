"""Tate cohomology H^{-1}(Z/2, L) = Ker(1+sigma)/Im(1-sigma) for lattices
with an involutive integer action, and the involutions acting on the built-in
Picard lattices.

For a cyclic group this group is isomorphic to H^1, which is what the Brauer
group computations consume.  Every invariant factor divides 2 because
2x = (1-sigma)x for x in Ker(1+sigma).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lattice as _lattice
from .intlinalg import (
    identity,
    invariant_factors,
    kernel_basis,
    mat_mul,
    smith_normal_form,
    solve_integer,
)


@dataclass(frozen=True)
class InvolutionModule:
    """Free Z-module of finite rank with an order-2 action (columns act)."""

    sigma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = self.rank
        sq = mat_mul(self.matrix(), self.matrix())
        if sq != identity(r):
            raise ValueError("sigma must square to the identity")

    @property
    def rank(self) -> int:
        return len(self.sigma)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.sigma]

    @staticmethod
    def from_matrix(M) -> "InvolutionModule":
        return InvolutionModule(tuple(tuple(int(x) for x in row) for row in M))


def h1(mod: InvolutionModule) -> tuple[int, ...]:
    """Invariant factors (each equal to 2) of Ker(1+sigma)/Im(1-sigma).

    The kernel basis comes from the SNF of 1+sigma; the columns of 1-sigma lie
    in that kernel since (1+sigma)(1-sigma) = 0, so expressing them in kernel
    coordinates is an exact integral solve, and the cokernel torsion is read
    off a second SNF.
    """
    r = mod.rank
    sigma = mod.matrix()
    one_plus = [[(1 if i == j else 0) + sigma[i][j] for j in range(r)] for i in range(r)]
    one_minus = [[(1 if i == j else 0) - sigma[i][j] for j in range(r)] for i in range(r)]
    K = kernel_basis(one_plus)
    k = len(K[0]) if K and K[0] else 0
    if k == 0:
        return ()
    coords = solve_integer(K, one_minus)
    factors = invariant_factors(coords)
    if len(factors) != k:
        raise AssertionError("Im(1-sigma) must have finite index in Ker(1+sigma)")
    torsion = tuple(d for d in factors if d != 1)
    for d in torsion:
        if d != 2:
            raise AssertionError(f"invariant factor {d} does not divide 2")
    return torsion


def sigma_picW_caseS() -> InvolutionModule:
    """Square-root conjugation on the rank-8 lattice in the S basis."""
    return InvolutionModule.from_matrix(_lattice.galois_involution_matrix())


def sigma_picW_caseSprime() -> InvolutionModule:
    """Same involution re-expressed in the refined basis S'.

    S1 and S2 are half-sums containing C1-+ resp. C2-+; applying the
    involution by linearity and rewriting in S' coordinates gives
    sigma(S1) = 2 D1 + D2 + D3 - S1 and sigma(S2) = D1 + 2 D2 + D3 - S2.
    """
    cols = [
        [1, 0, 0, 0, 0, 0, 0, 0],  # D1
        [0, 1, 0, 0, 0, 0, 0, 0],  # D2
        [0, 0, 1, 0, 0, 0, 0, 0],  # D3
        [1, 0, 0, -1, 0, 0, 0, 0],  # C1++ -> D1 - C1++
        [2, 1, 1, 0, -1, 0, 0, 0],  # S1
        [0, 1, 0, 0, 0, -1, 0, 0],  # C2++ -> D2 - C2++
        [1, 2, 1, 0, 0, 0, -1, 0],  # S2
        [0, 0, 1, 0, 0, 0, 0, -1],  # C3++ -> D3 - C3++
    ]
    M = [[cols[j][i] for j in range(8)] for i in range(8)]
    return InvolutionModule.from_matrix(M)


def quotient_module(mod: InvolutionModule, sublattice_columns) -> InvolutionModule:
    """Induced involution on L / span(columns) when the span is a direct
    summand stabilized by sigma.

    Via D = U S V, the quotient identifies with the last r-s coordinates of
    U x; the induced action is the corresponding block of U sigma U^{-1}.
    """
    r = mod.rank
    S = [list(row) for row in sublattice_columns]
    s = len(S[0])
    D, U, V = smith_normal_form(S)
    for i in range(s):
        if D[i][i] != 1:
            raise ValueError("sublattice is not a direct summand (invariant factor != 1)")
    sigma = mod.matrix()
    sub_image = mat_mul(sigma, S)
    solve_integer(S, sub_image)  # raises if sigma does not stabilize the span
    # U^{-1} from the unimodular transform by exact solve
    Uinv = solve_integer(U, identity(r))
    conj = mat_mul(U, mat_mul(sigma, Uinv))
    # in U-coordinates the span is exactly Z^s x 0, so stability means the
    # bottom-left block vanishes and the quotient action is the lower block
    for i in range(s, r):
        for j in range(s):
            if conj[i][j] != 0:
                raise AssertionError("quotient action is not well defined")
    block = [[conj[i][j] for j in range(s, r)] for i in range(s, r)]
    return InvolutionModule.from_matrix(block)


def sigma_picU() -> InvolutionModule:
    """Involution on the rank-5 quotient by the three fiber classes.

    Derived from the S-basis action rather than hand-typed; the result is -1
    on every generator because each C class maps to its complement in D_i.
    """
    sub = [[1 if i == j else 0 for j in range(3)] for i in range(8)]
    return quotient_module(sigma_picW_caseS(), sub)
