"""Exact linear algebra over the rationals.

Matrices are lists of rows; entries are anything ``Fraction`` accepts.
Nothing here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` strings or ``(p, q)`` pairs."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    if isinstance(value, float):
        raise TypeError("floats are not accepted where exact rationals are required")
    return Fraction(value)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[as_fraction(x) for x in row] for row in rows]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: Iterable[Iterable], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns ``(R, pivot_columns)``; zero rows are dropped."""
    m = to_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Iterable]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Iterable], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}`` (one basis vector per free column)."""
    r, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a_rows: Sequence[Sequence], b: Sequence, ncols: int) -> list[Fraction] | None:
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    aug = [list(row) + [bi] for row, bi in zip(a_rows, b)]
    if not aug:
        return [Fraction(0)] * ncols
    r, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(r, pivots):
        x[p] = row[ncols]
    return x


def independent_rows(a_rows: Sequence[Sequence], b: Sequence, ncols: int):
    """Row-reduce ``[A | b]``; ``None`` when inconsistent, else ``(A', b')`` with
    ``A'`` of full row rank and the same solution set."""
    aug = [list(row) + [bi] for row, bi in zip(a_rows, b)]
    if not aug:
        return [], []
    r, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    return [row[:ncols] for row in r], [row[ncols] for row in r]


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def least_norm_solution(a_rows: Sequence[Sequence], b: Sequence, ncols: int) -> list[Fraction] | None:
    """Minimum Euclidean norm solution of ``A x = b``, or ``None`` if inconsistent.

    With ``A'`` the full-row-rank reduction this is ``A'^T (A' A'^T)^{-1} b'``; the
    reduction depends only on ``A``, so the result is linear in ``b``.
    """
    red = independent_rows(a_rows, b, ncols)
    if red is None:
        return None
    ar, br = red
    if not ar:
        return [Fraction(0)] * ncols
    gram = [[dot(u, v) for v in ar] for u in ar]
    ginv = inverse(gram)
    w = [dot(row, br) for row in ginv]
    return [sum((ar[k][j] * w[k] for k in range(len(ar))), Fraction(0)) for j in range(ncols)]


def det(m: Sequence[Sequence]) -> Fraction:
    a = to_matrix(m)
    n = len(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector with the same direction."""
    fr = [as_fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)
