"""Exact integer linear algebra: determinants, Smith normal form, solves.

Everything here runs on plain Python ints (lists of lists); the matrices in
this toolkit have rank at most ~20, so clarity wins over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(rows)]


def mat_vec(A: Matrix, v: list[int]) -> list[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(row) for row in zip(*A)]


def det_bareiss(M: Matrix) -> int:
    """Fraction-free Gaussian elimination; exact integer determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det_cofactor(M: Matrix) -> int:
    """Cofactor expansion; independent cross-check for small ranks."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * det_cofactor(minor)
    return total


def smith_normal_form(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with D = U*M*V diagonal, d1 | d2 | ..., U,V unimodular."""
    A = [row[:] for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c * row_j
        for t in range(m):
            A[i][t] += c * A[j][t]
        for t in range(n):
            U[i][t] += c * U[j][t]

    def add_col(i, j, c):  # col_i += c * col_j
        for row in A:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def negate_row(i):
        for t in range(m):
            A[i][t] = -A[i][t]
        for t in range(n):
            U[i][t] = -U[i][t]

    k = 0
    while k < min(n, m):
        pivot = None
        for i in range(k, n):
            for j in range(k, m):
                if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            reduced = True
            for i in range(k + 1, n):
                if A[i][k] % A[k][k] != 0:
                    add_row(i, k, -(A[i][k] // A[k][k]))
                    swap_rows(k, i)
                    reduced = False
            if not reduced:
                continue
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    add_row(i, k, -(A[i][k] // A[k][k]))
            for j in range(k + 1, m):
                if A[k][j] % A[k][k] != 0:
                    add_col(j, k, -(A[k][j] // A[k][k]))
                    swap_cols(k, j)
                    reduced = False
            if not reduced:
                continue
            for j in range(k + 1, m):
                if A[k][j] != 0:
                    add_col(j, k, -(A[k][j] // A[k][k]))
            # divisibility of the remaining block by the pivot
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, m):
                    if A[i][j] % A[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(k, offender, 1)
        if A[k][k] < 0:
            negate_row(k)
        k += 1
    return A, U, V


def invariant_factors(M: Matrix) -> list[int]:
    D, _, _ = smith_normal_form(M)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i] != 0:
            out.append(D[i][i])
    return out


def kernel_basis(M: Matrix) -> Matrix:
    """Columns spanning the integer kernel {x : M x = 0}, as an r x k matrix.

    The kernel of an integer matrix is a saturated sublattice, so the columns
    of V attached to zero diagonal entries of the SNF are a genuine basis.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    D, _, V = smith_normal_form(M)
    zero_cols = [j for j in range(m) if j >= n or D[j][j] == 0]
    return [[V[i][j] for j in zero_cols] for i in range(m)]


def solve_exact(A: Matrix, B: Matrix) -> Matrix:
    """Solve A X = B exactly over Q; raises if inconsistent.

    A has full column rank (k columns); X is k x (cols of B) with Fraction
    entries.
    """
    rows = len(A)
    k = len(A[0]) if rows else 0
    bc = len(B[0]) if B else 0
    M = [[Fraction(A[i][j]) for j in range(k)] + [Fraction(B[i][j]) for j in range(bc)] for i in range(rows)]
    row = 0
    pivots = []
    for col in range(k):
        sel = None
        for i in range(row, rows):
            if M[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        M[row], M[sel] = M[sel], M[row]
        pv = M[row][col]
        M[row] = [x / pv for x in M[row]]
        for i in range(rows):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [u - f * w for u, w in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
    if pivots != list(range(k)):
        raise ValueError("matrix does not have full column rank")
    for i in range(row, rows):
        if any(M[i][k + j] != 0 for j in range(bc)):
            raise ValueError("inconsistent system")
    return [[M[i][k + j] for j in range(bc)] for i in range(k)]


def solve_integer(A: Matrix, B: Matrix) -> Matrix:
    """Exact solve with an integrality assertion on the result."""
    X = solve_exact(A, B)
    for row in X:
        for x in row:
            if x.denominator != 1:
                raise ValueError("solution is not integral")
    return [[int(x) for x in row] for row in X]
