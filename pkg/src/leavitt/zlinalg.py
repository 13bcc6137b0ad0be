"""Exact integer linear algebra: Smith normal form, determinant, kernel, cokernel.

Everything runs on Python ints; there is no modular or floating shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows, nrows: int | None = None, ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        r = len(rows) if nrows is None else nrows
        c = (len(rows[0]) if rows else 0) if ncols is None else ncols
        flat = tuple(int(x) for row in rows for x in row)
        return cls(r, c, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls(r, c, (0,) * (r * c))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, self.rows, other.cols)

    def apply(self, x) -> list[int]:
        """Matrix-vector product."""
        if len(x) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(self[i, j] * x[j] for j in range(self.cols)) for i in range(self.rows)]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith normal form."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    rank: int
    invariant_factors: tuple[int, ...]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Pivot choice is the smallest nonzero absolute value in the active block,
    ties broken by row-major position, which keeps the result deterministic.
    """
    m, n = A.rows, A.cols
    D = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (pivot is None or abs(x) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty |= D[t][j] != 0
            if dirty:
                # a remainder survived: bring the smallest entry of row/col t to the pivot
                best, where = abs(p), None
                for i in range(t + 1, m):
                    if D[i][t] and abs(D[i][t]) < best:
                        best, where = abs(D[i][t]), ("r", i)
                for j in range(t + 1, n):
                    if D[t][j] and abs(D[t][j]) < best:
                        best, where = abs(D[t][j]), ("c", j)
                if where[0] == "r":
                    swap_rows(t, where[1])
                else:
                    swap_cols(t, where[1])
                continue
            # row and column t are clear; enforce divisibility on the rest
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = tuple(D[i][i] for i in range(t))
    return SmithForm(
        IntMatrix.from_rows(U, m, m),
        IntMatrix.from_rows(V, n, n),
        IntMatrix.from_rows(D, m, n),
        t,
        factors,
    )


def determinant(A: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    M = A.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def kernel_basis(A: IntMatrix) -> list[list[int]]:
    """Z-basis of ``{x : A x = 0}``: the columns of V past the rank."""
    snf = smith_normal_form(A)
    return [snf.V.column(j) for j in range(snf.rank, A.cols)]


@dataclass(frozen=True)
class Cokernel:
    """``Z^rows / A Z^cols`` presented as ``(+) Z/d_i (+) Z^free_rank`` with every d_i > 1."""

    invariant_factors: tuple[int, ...]
    free_rank: int
    smith: SmithForm

    def reduce(self, x) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Canonical (torsion residues, free coordinates) of the class of ``x``."""
        y = self.smith.U.apply(list(x))
        r = self.smith.rank
        d = self.smith.invariant_factors
        torsion = tuple(y[i] % d[i] for i in range(r) if d[i] > 1)
        free = tuple(y[r:])
        return torsion, free

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def cokernel(A: IntMatrix) -> Cokernel:
    snf = smith_normal_form(A)
    factors = tuple(d for d in snf.invariant_factors if d > 1)
    return Cokernel(factors, A.rows - snf.rank, snf)


def rank(A: IntMatrix) -> int:
    return smith_normal_form(A).rank


def vector_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
