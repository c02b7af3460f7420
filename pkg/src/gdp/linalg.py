"""Exact linear algebra over the rationals.

Everything here works on lists of lists of ``int`` or ``Fraction``; no
floating point is involved, so results are reproducible bit for bit.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int | Fraction]]


def _as_fractions(a: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def leading_minors(a: Matrix) -> list[Fraction]:
    """All leading principal minors det(a[:k, :k]) for k = 1..n.

    Computed with fraction-free Bareiss elimination without row exchanges,
    so a zero pivot is reported as a zero minor rather than skipped.
    """
    m = _as_fractions(a)
    n = len(m)
    minors: list[Fraction] = []
    prev = Fraction(1)
    for k in range(n):
        pivot = m[k][k]
        if pivot == 0:
            # Bareiss cannot continue past a zero pivot without pivoting
            return leading_minors_direct(a)
        minors.append(pivot)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) / prev
        prev = pivot
    return minors


def leading_minors_direct(a: Matrix) -> list[Fraction]:
    return [det([row[: k + 1] for row in a[: k + 1]]) for k in range(len(a))]


def det(a: Matrix) -> Fraction:
    m = _as_fractions(a)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        result *= pivot
        for r in range(col + 1, n):
            factor = m[r][col] / pivot
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return sign * result


def is_negative_definite(a: Matrix) -> bool:
    """Sylvester's criterion: (-1)^k * minor_k > 0 for every k."""
    return all((-1) ** (k + 1) * minor > 0 for k, minor in enumerate(leading_minors(a)))


def solve(a: Matrix, b: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve a @ x = b exactly. Raises ValueError if a is singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        m[col], m[pivot_row] = m[pivot_row], m[col]
        pivot = m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col] / pivot
                for c in range(col, n + 1):
                    m[r][c] -= factor * m[col][c]
    return [m[i][n] / m[i][i] for i in range(n)]


def inverse(a: Matrix) -> list[list[Fraction]]:
    n = len(a)
    columns = [solve(a, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[columns[j][i] for j in range(n)] for i in range(n)]
