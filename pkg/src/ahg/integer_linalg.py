"""Exact integer matrix kernels.

Matrices are plain nested lists of Python ints (row-major).  Nothing here
touches floating point.

Conventions
-----------
* ``hermite_normal_form`` is column-style: it returns ``H`` and a unimodular
  ``U`` with ``M @ U == H``.  ``H`` is in column echelon form: the pivot of
  column ``k`` sits strictly below the pivot of column ``k - 1``, pivots are
  positive, entries to the left of a pivot lie in ``[0, pivot)``, and zero
  columns come last.
* ``smith_normal_form`` returns ``U``, ``V`` unimodular with
  ``U @ M @ V == diag(divisors)`` (padded with zeros to the shape of ``M``)
  and ``divisors[i]`` dividing ``divisors[i + 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


@dataclass(frozen=True)
class HnfResult:
    H: Matrix
    U: Matrix


@dataclass(frozen=True)
class SnfResult:
    divisors: list[int]
    U: Matrix
    V: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    M = [[int(x) for x in row] for row in rows]
    if not M or not M[0]:
        raise ValueError("matrix must have positive dimensions")
    if any(len(row) != len(M[0]) for row in M):
        raise ValueError("ragged matrix")
    return M


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign, prev = 1, 1
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


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _col_combine(M: Matrix, k: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (col_k, col_j) <- (a col_k + b col_j, c col_k + d col_j)
    for row in M:
        x, y = row[k], row[j]
        row[k], row[j] = a * x + b * y, c * x + d * y


def hermite_normal_form(M: Sequence[Sequence[int]]) -> HnfResult:
    H = as_matrix(M)
    m, n = len(H), len(H[0])
    U = identity(n)
    k = 0
    for i in range(m):
        if k == n:
            break
        for j in range(k + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][k]
            g, x, y = _egcd(a, b)
            # unimodular: det [[x, -b/g], [y, a/g]] = 1
            for T in (H, U):
                _col_combine(T, k, j, x, y, -b // g, a // g)
        if H[i][k] == 0:
            continue
        if H[i][k] < 0:
            for T in (H, U):
                for row in T:
                    row[k] = -row[k]
        p = H[i][k]
        for j in range(k):
            q = H[i][j] // p
            if q:
                for T in (H, U):
                    for row in T:
                        row[j] -= q * row[k]
        k += 1
    return HnfResult(H, U)


def _is_diagonal(M: Matrix) -> bool:
    return all(M[i][j] == 0 for i in range(len(M)) for j in range(len(M[0])) if i != j)


def _chain_breaks(diag: list[int]) -> tuple[int, int] | None:
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if (a == 0 and b != 0) or (a != 0 and b % a != 0):
                return i, j
    return None


def smith_normal_form(M: Sequence[Sequence[int]]) -> SnfResult:
    """Smith form through alternating column and row Hermite passes."""
    D = as_matrix(M)
    m, n = len(D), len(D[0])
    U, V = identity(m), identity(n)
    while True:
        while not _is_diagonal(D):
            col = hermite_normal_form(D)
            D, V = col.H, matmul(V, col.U)
            row = hermite_normal_form(transpose(D))
            D, U = transpose(row.H), matmul(transpose(row.U), U)
        for i in range(min(m, n)):
            if D[i][i] < 0:
                D[i] = [-x for x in D[i]]
                U[i] = [-x for x in U[i]]
        diag = [D[i][i] for i in range(min(m, n))]
        bad = _chain_breaks(diag)
        if bad is None:
            break
        i, j = bad
        # row_i += row_j brings d_j into column j of row i; the next passes
        # replace (d_i, d_j) by (gcd, lcm)-type entries
        D[i] = [x + y for x, y in zip(D[i], D[j])]
        U[i] = [x + y for x, y in zip(U[i], U[j])]
    return SnfResult(diag, U, V)


def primitive_vector(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("primitive_vector of the zero vector")
    return tuple(int(x) // g for x in v)


def inverse_unimodular(M: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rational_inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return smith_normal_form(vectors).rank


def lattice_basis_of_span(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice ``span_Q(vectors) ∩ Z^n``.

    With ``U B V = D`` the rows of ``B`` span the same rational space as
    the first ``rank`` rows of ``V^{-1}``, and those rows extend to a basis
    of ``Z^n``, so they are saturated.
    """
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    snf = smith_normal_form(vecs)
    Vinv = inverse_unimodular(snf.V)
    return [tuple(Vinv[i]) for i in range(snf.rank)]


def solve_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[Fraction, ...]:
    """Coordinates ``y`` with ``sum(y_k * basis[k]) == v``; raises if ``v`` is off the span."""
    d = len(basis)
    if d == 0:
        if any(v):
            raise ValueError("vector not in span")
        return ()
    n = len(v)
    # columns are basis vectors, augmented by v
    A = [[Fraction(basis[k][i]) for k in range(d)] + [Fraction(v[i])] for i in range(n)]
    r = 0
    pivots = []
    for c in range(d):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != d:
        raise ValueError("basis vectors are linearly dependent")
    if any(A[i][d] != 0 for i in range(r, n)):
        raise ValueError("vector not in span")
    return tuple(A[i][d] for i in range(d))


def integer_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    y = solve_in_basis(basis, v)
    if any(x.denominator != 1 for x in y):
        raise ValueError("vector not in the lattice spanned by the basis")
    return tuple(int(x) for x in y)
