"""Exact convex-hull membership for rational points.

Two complete deciders: enumeration of affinely independent supports
(Caratheodory) for small point sets and a Bland-rule phase-one simplex for
larger ones.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

Vector = Sequence[Fraction]

SUPPORT_ENUMERATION_LIMIT = 12


def solve_unique(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve ``A x = b`` by exact Gauss-Jordan elimination.

    Returns ``None`` unless the system is consistent with a unique solution.
    """
    rows, cols = len(A), len(A[0])
    M = [list(A[i]) + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            return None  # free column: not unique
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b_ for a, b_ in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] != 0 for i in range(r, rows)):
        return None
    return [M[i][cols] for i in range(cols)]


def hull_by_supports(p: Vector, S: Sequence[Vector]) -> bool:
    """Try every support of at most ``dim + 1`` points with a unique convex weight."""
    dim = len(p)
    target = [Fraction(v) for v in p] + [Fraction(1)]
    for k in range(1, min(len(S), dim + 1) + 1):
        for idx in combinations(range(len(S)), k):
            A = [[Fraction(S[j][i]) for j in idx] for i in range(dim)]
            A.append([Fraction(1)] * k)
            lam = solve_unique(A, target)
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def feasible_simplex(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Whether ``A x = b, x >= 0`` has a solution (phase one, Bland's rule)."""
    m, n = len(A), len(A[0])
    # flip rows so that b >= 0, then add one artificial per row
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [sign * Fraction(v) for v in A[i]]
        row += [Fraction(int(j == i)) for j in range(m)]
        row.append(sign * Fraction(b[i]))
        T.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, stored as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= T[i][j]
    for i in range(m):
        cost[n + i] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen in phase one
            break
        r = best[1]
        piv = T[r][enter]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * c for a, c in zip(cost, T[r])]
        basis[r] = enter
    return -cost[width] == 0


def hull_by_simplex(p: Vector, S: Sequence[Vector]) -> bool:
    dim = len(p)
    A = [[Fraction(s[i]) for s in S] for i in range(dim)]
    A.append([Fraction(1)] * len(S))
    b = [Fraction(v) for v in p] + [Fraction(1)]
    return feasible_simplex(A, b)


def in_hull(p: Vector, S: Sequence[Vector]) -> bool:
    if not S:
        return False
    if len(S) <= SUPPORT_ENUMERATION_LIMIT:
        return hull_by_supports(p, S)
    return hull_by_simplex(p, S)
