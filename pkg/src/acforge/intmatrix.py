"""Exact integer linear algebra over presentations.

Everything is arbitrary-precision (Python ints); no floats anywhere.
Convention: rows = relators, columns = generators, so the exponent matrix
of an n-relator, m-generator presentation is n x m.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .presentation import Presentation
from .words import exponent_vector


class IntMatrix:
    """Immutable rectangular integer matrix (possibly 0 rows or columns)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} does not match row width {width}")
            ncols = width
        elif ncols is None:
            ncols = 0
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, {list(map(list, self.rows))})"

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [
                [
                    sum(self.rows[i][k] * other.rows[k][j] for k in range(self.ncols))
                    for j in range(other.ncols)
                ]
                for i in range(self.nrows)
            ],
            ncols=other.ncols,
        )

    def is_square(self) -> bool:
        return self.nrows == self.ncols


def matrix_to_text(a: IntMatrix) -> str:
    """Interchange format: first line ``n m``, then n rows of m integers."""
    lines = [f"{a.nrows} {a.ncols}"]
    lines.extend(" ".join(str(x) for x in row) for row in a.rows)
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> IntMatrix:
    tokens = [ln for ln in text.splitlines() if ln.split("#")[0].strip()]
    if not tokens:
        raise ValueError("empty matrix text")
    header = tokens[0].split()
    if len(header) != 2:
        raise ValueError(f"expected 'n m' header, got {tokens[0]!r}")
    n, m = int(header[0]), int(header[1])
    if n < 0 or m < 0:
        raise ValueError("negative dimensions")
    if len(tokens) - 1 != n:
        raise ValueError(f"expected {n} rows, found {len(tokens) - 1}")
    rows = []
    for ln in tokens[1:]:
        row = [int(x) for x in ln.split("#")[0].split()]
        if len(row) != m:
            raise ValueError(f"expected {m} entries per row, got {len(row)}")
        rows.append(row)
    return IntMatrix(rows, ncols=m)


def exponent_matrix(p: Presentation) -> IntMatrix:
    """Row i is the exponent vector of relator i (abelianized presentation matrix)."""
    m = len(p.generators)
    return IntMatrix([exponent_vector(r, m) for r in p.relators], ncols=m)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Intermediate divisions are exact, so entries stay integers with
    polynomial bit growth.  det of the 0x0 matrix is 1.
    """
    if not a.is_square():
        raise ValueError(f"determinant of non-square {a.nrows}x{a.ncols} matrix")
    n = a.nrows
    if n == 0:
        return 1
    m = [list(r) for r in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: IntMatrix) -> Tuple[Tuple[int, ...], IntMatrix, IntMatrix]:
    """Diagonalize over the integers: returns ``(factors, U, V)``.

    ``U @ a @ V`` is diagonal with the nonnegative invariant factors on the
    diagonal, each dividing the next (zeros last); U and V are unimodular.
    """
    n, m = a.nrows, a.ncols
    M: List[List[int]] = [list(r) for r in a.rows]
    U: List[List[int]] = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V: List[List[int]] = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_addmul(src, dst, c):  # row dst += c * row src
        M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def col_addmul(src, dst, c):  # col dst += c * col src
        for row in M:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def row_negate(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(n, m):
        # pivot: nonzero entry of minimal absolute value in the active block
        pivot = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = M[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        while True:
            # clear column t with row t, restarting if a smaller remainder appears
            dirty = False
            for i in range(n):
                if i == t or M[i][t] == 0:
                    continue
                q = M[i][t] // M[t][t]
                row_addmul(t, i, -q)
                if M[i][t] != 0:
                    row_swap(t, i)
                    dirty = True
            if dirty:
                continue
            for j in range(m):
                if j == t or M[t][j] == 0:
                    continue
                q = M[t][j] // M[t][t]
                col_addmul(t, j, -q)
                if M[t][j] != 0:
                    col_swap(t, j)
                    dirty = True
            if dirty:
                continue
            # divisibility: pivot must divide every remaining entry
            witness = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if M[i][j] % M[t][t] != 0:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            row_addmul(witness, t, 1)
        if M[t][t] < 0:
            row_negate(t)
        t += 1
    factors = tuple(M[i][i] for i in range(min(n, m)))
    return factors, IntMatrix(U, ncols=n), IntMatrix(V, ncols=m)


def invariant_factors(a: IntMatrix) -> Tuple[int, ...]:
    return smith_normal_form(a)[0]


def nonunit_factors(a: IntMatrix) -> Tuple[int, ...]:
    """Invariant factors other than 1, sorted; the AC-move invariant."""
    return tuple(sorted(f for f in invariant_factors(a) if f != 1))


def is_perfect_presentation(p: Presentation) -> bool:
    """True iff the abelianization presented by the exponent matrix is trivial."""
    facs = invariant_factors(exponent_matrix(p))
    return len(facs) == len(p.generators) and all(f == 1 for f in facs)
