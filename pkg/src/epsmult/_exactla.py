"""Small dense exact linear algebra over the rationals.

Everything here runs on lists of Fractions (or ints) and is sized for the
desk-scale systems this package produces: boundary matrices of complexes on
at most four vertices, d x d facet solves with d <= 4, and interpolation
systems with a handful of unknowns.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


def _frac_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination."""
    m = _frac_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / inv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows: Sequence[Sequence]) -> Fraction:
    m = _frac_rows(rows)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        inv = m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return sign * result


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """Solution of a square system, or None when singular."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col]
        m[col] = [a / inv for a in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def solve_least_determined(rows: Sequence[Sequence], rhs: Sequence):
    """Solve a (possibly overdetermined) consistent system with full column rank.

    Returns (solution, ok).  ok is False when the rows are rank-deficient in
    the unknowns or mutually inconsistent.
    """
    if not rows:
        return None, False
    ncols = len(rows[0])
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    r = 0
    pivots = []
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        m[r] = [a / inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    if len(pivots) < ncols:
        return None, False
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None, False
    sol = [Fraction(0)] * ncols
    for row_idx, col in enumerate(pivots):
        sol[col] = m[row_idx][ncols]
    return sol, True


def nullspace_vector(rows: Sequence[Sequence]) -> Optional[tuple[int, ...]]:
    """Primitive integer spanning vector of a one-dimensional null space.

    Returns None unless the null space has dimension exactly 1.
    """
    if not rows:
        return None
    ncols = len(rows[0])
    m = _frac_rows(rows)
    r = 0
    pivots: list[int] = []
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        m[r] = [a / inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * ncols
    vec[fc] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        vec[col] = -m[row_idx][fc]
    return primitive(vec)


def primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers (orientation preserved)."""
    denom = 1
    for v in vec:
        denom = denom * Fraction(v).denominator // gcd(denom, Fraction(v).denominator)
    ints = [int(Fraction(v) * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs)
