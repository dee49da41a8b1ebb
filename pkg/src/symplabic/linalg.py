"""Dense matrix helpers over Scalar (and, where no pivoting is needed, Expr).

Matrices are lists of row lists.  Indices are 0-based internally.
"""
from __future__ import annotations

from typing import Sequence

from .errors import Singular
from .scalar import ONE, ZERO, Scalar

Matrix = list


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return [[Scalar.coerce(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)]


def unit(n: int, i: int, j: int, value=ONE) -> Matrix:
    """Matrix unit E_{ij} (0-based) scaled by ``value``."""
    m = zeros(n)
    m[i][j] = Scalar.coerce(value)
    return m


def coerce(rows) -> Matrix:
    return [[Scalar.coerce(x) for x in row] for row in rows]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        new_row = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if isinstance(x, Scalar) and not x:
                    continue
                if isinstance(y, Scalar) and not y:
                    continue
                acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return out


def product(mats: Sequence[Matrix], n: int | None = None) -> Matrix:
    if not mats:
        if n is None:
            raise ValueError("empty product needs a size")
        return identity(n)
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def trace(a: Matrix):
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q(sqrt 2)."""
    n = len(a)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise Singular("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv_p = work[col][col].inverse()
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def det(a: Matrix) -> Scalar:
    """Determinant by Gaussian elimination over Q(sqrt 2)."""
    n = len(a)
    if n == 0:
        return ONE
    work = [list(row) for row in a]
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        p = work[col][col]
        result = result * p
        inv_p = p.inverse()
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] * inv_p
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return result


def rank(a: Matrix) -> int:
    work = [list(row) for row in a]
    if not work:
        return 0
    rows, cols = len(work), len(work[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv_p = work[r][c].inverse()
        for i in range(r + 1, rows):
            if work[i][c]:
                f = work[i][c] * inv_p
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == rows:
            break
    return r


def equal(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def proportional(a: Matrix, b: Matrix):
    """Return c with a == c*b if such a nonzero c exists, else None."""
    c = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if not y:
                if x:
                    return None
                continue
            if c is None:
                c = x / y
                if not c:
                    return None
            elif x != c * y:
                return None
    return c


def is_diagonal(a: Matrix) -> bool:
    return all(not a[i][j] for i in range(len(a)) for j in range(len(a)) if i != j)


def to_literals(a: Matrix) -> list:
    return [[str(x) for x in row] for row in a]


def to_float(a: Matrix) -> list:
    return [[float(x) for x in row] for row in a]
