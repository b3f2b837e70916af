"""Exact rational vectors and matrices.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  All
dimensions here are tiny (the rank of a root system, at most a handful),
so dense fraction-free style Gaussian elimination is all that is needed.
No floating point enters this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


def vec(entries: Iterable) -> Vec:
    return tuple(Fraction(x) for x in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def scale(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m, strict=True))


def gram_pair(gram: Mat, u: Vec, v: Vec) -> Fraction:
    """The pairing u^T gram v."""
    return dot(u, mat_vec(gram, v))


def is_symmetric(m: Mat) -> bool:
    return m == transpose(m)


def leading_minors_positive(m: Mat) -> bool:
    """Sylvester test for positive definiteness."""
    n = len(m)
    return all(det(tuple(row[: k + 1] for row in m[: k + 1])) > 0 for k in range(n))


def det(m: Mat) -> Fraction:
    n = len(m)
    a = [list(row) for row in m]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        result *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            f = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    return result


def inverse(m: Mat) -> Mat:
    n = len(m)
    a = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_unique(rows: Sequence[Vec], rhs: Vec) -> Vec | None:
    """Solve a (possibly rectangular) linear system.

    Returns the solution when it exists and is unique, otherwise None
    (inconsistent or underdetermined).
    """
    m, n = len(rows), len(rows[0]) if rows else 0
    a = [list(row) + [b] for row, b in zip(rows, rhs, strict=True)]
    piv_cols = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    if len(piv_cols) < n:
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = a[i][n]
    return tuple(sol)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form with zero rows dropped."""
    if not rows:
        return ()
    m, n = len(rows), len(rows[0])
    a = [list(map(Fraction, row)) for row in rows]
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in a[:r] if any(x != 0 for x in row))


def matrix_rank(rows: Sequence[Vec]) -> int:
    return len(rref(rows))


def is_integral(v: Vec) -> bool:
    return all(x.denominator == 1 for x in v)


def parse_rational(value) -> Fraction:
    """Accept ints and 'p/q' strings; reject floats to keep exactness."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"refusing inexact value {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cannot parse rational from {value!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))
