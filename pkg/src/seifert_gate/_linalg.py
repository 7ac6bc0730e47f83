"""Exact dense linear algebra for small integer quadratic forms.

Everything here works over arbitrary-precision integers or
``fractions.Fraction``; no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt
from typing import Sequence


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
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


def ldl_pivots(rows: Sequence[Sequence[int]]) -> list[Fraction] | None:
    """Pivots of the in-order LDL^T congruence of a symmetric matrix.

    Returns None if a zero pivot is hit (the form is then not definite).
    The signs of the pivots give the inertia of the form.
    """
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[Fraction] = []
    for k in range(n):
        p = a[k][k]
        if p == 0:
            return None
        pivots.append(p)
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f == 0:
                continue
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return pivots


def solve_exact(rows: Sequence[Sequence[int]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve M x = rhs over the rationals; None if M is singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(rhs[i])] for i, r in enumerate(rows)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return None
        a[k], a[pivot_row] = a[pivot_row], a[k]
        inv = 1 / a[k][k]
        for i in range(n):
            if i == k or a[i][k] == 0:
                continue
            f = a[i][k] * inv
            for j in range(k, n + 1):
                a[i][j] -= f * a[k][j]
    return [a[i][n] / a[i][i] for i in range(n)]


def invert_exact(rows: Sequence[Sequence[int]]) -> list[list[Fraction]] | None:
    """Exact inverse over the rationals; None if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return None
        a[k], a[pivot_row] = a[pivot_row], a[k]
        inv[k], inv[pivot_row] = inv[pivot_row], inv[k]
        scale = 1 / a[k][k]
        a[k] = [x * scale for x in a[k]]
        inv[k] = [x * scale for x in inv[k]]
        for i in range(n):
            if i == k or a[i][k] == 0:
                continue
            f = a[i][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
            inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    return inv


def rank_exact(vectors: Sequence[Sequence[int]]) -> int:
    """Rank of a list of integer vectors over the rationals."""
    if not vectors:
        return 0
    a = [[Fraction(x) for x in v] for v in vectors]
    cols = len(a[0])
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] == 0:
                continue
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def row_lattice_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the lattice generated by integer rows (echelon form over Z).

    Gcd-style row reduction; the returned rows are triangular and generate
    exactly the same lattice as the input rows.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    cols = len(work[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, len(work)):
            while work[i][c] != 0:
                q = work[r][c] // work[i][c]
                work[r] = [a - q * b for a, b in zip(work[r], work[i])]
                work[r], work[i] = work[i], work[r]
        if work[r][c] < 0:
            work[r] = [-a for a in work[r]]
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r] if any(row)]


def cholesky_form(g: Sequence[Sequence[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Rational square completion of a positive definite form.

    Returns (d, u) with x^T G x = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2.
    Raises ValueError if G is not positive definite.
    """
    m = len(g)
    work = [[Fraction(x) for x in row] for row in g]
    d: list[Fraction] = [Fraction(0)] * m
    u = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        if work[i][i] <= 0:
            raise ValueError("form is not positive definite")
        d[i] = work[i][i]
        for j in range(i + 1, m):
            u[i][j] = work[i][j] / d[i]
        for k in range(i + 1, m):
            for l in range(k, m):
                work[k][l] -= d[i] * u[i][k] * u[i][l]
                work[l][k] = work[k][l]
    return d, u


def floor_add_sqrt(c: Fraction, q: Fraction) -> int:
    """Largest integer n with n <= c + sqrt(q), computed exactly (q >= 0)."""
    if q < 0:
        raise ValueError("negative radicand")
    s = isqrt(q.numerator * q.denominator)
    n = floor(c + Fraction(s + 1, q.denominator))
    while True:
        diff = n - c
        if diff <= 0 or diff * diff <= q:
            return n
        n -= 1


def ceil_sub_sqrt(c: Fraction, q: Fraction) -> int:
    """Smallest integer n with n >= c - sqrt(q), computed exactly (q >= 0)."""
    return -floor_add_sqrt(-c, q)
