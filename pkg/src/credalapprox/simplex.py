"""The grid {m/N : m natural, |m|_1 = N} inside the standard simplex."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import ProbabilityCharge, as_fraction


@dataclass(frozen=True)
class GridPoint:
    """Point ``counts / denominator`` of the discretized simplex."""

    counts: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if self.denominator < 1:
            raise ValueError("denominator must be a positive integer")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        if sum(self.counts) != self.denominator:
            raise ValueError(f"counts {self.counts} do not sum to {self.denominator}")

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.counts)

    def as_charge(self) -> ProbabilityCharge:
        return ProbabilityCharge(self.values)


def grid_cardinality(n: int, N: int) -> int:
    """Number of grid points, ``C(N + n - 1, N)``."""
    if n < 1 or N < 1:
        raise ValueError("n and N must be positive")
    return math.comb(N + n - 1, N)


def _compositions(n: int, N: int) -> Iterator[tuple[int, ...]]:
    # lexicographic in the counts vector
    if n == 1:
        yield (N,)
        return
    for first in range(N + 1):
        for rest in _compositions(n - 1, N - first):
            yield (first,) + rest


def enumerate_grid(n: int, N: int) -> list[GridPoint]:
    """All grid points of dimension ``n`` and denominator ``N``, lexicographically."""
    if n < 1 or N < 1:
        raise ValueError("n and N must be positive")
    return [GridPoint(c, N) for c in _compositions(n, N)]


def round_to_grid(x: ProbabilityCharge | Sequence, N: int) -> GridPoint:
    """Floor every coordinate to ``m_i / N``, then hand the missing ``N - sum(m)``
    units out one each to the leading coordinates.

    The result is within L1 distance ``n / N`` (strictly) of ``x``; it is not
    necessarily the nearest grid point.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    if not isinstance(x, ProbabilityCharge):
        x = ProbabilityCharge(tuple(x))
    m = [math.floor(xi * N) for xi in x]
    short = N - sum(m)
    for i in range(short):
        m[i] += 1
    return GridPoint(tuple(m), N)


def l1_distance(x: Sequence, y: Sequence) -> Fraction:
    return sum((abs(as_fraction(a) - as_fraction(b)) for a, b in zip(x, y)), Fraction(0))


def nearest_grid_point(x: ProbabilityCharge | Sequence, N: int) -> GridPoint:
    """Exhaustive L1-nearest grid point. Test oracle only; exponential in n."""
    return min(enumerate_grid(len(x), N), key=lambda g: l1_distance(x, g.values))
