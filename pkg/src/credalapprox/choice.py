"""Choice functions over a finite credal set.

``opt_eps`` keeps decisions that are within ``gamma * R_D`` of the best for
at least one charge; ``max_eps`` keeps decisions that no alternative beats
by more than ``gamma * R_D`` under every charge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .core import (
    CredalSet,
    DecisionProblem,
    DimensionError,
    ProbabilityCharge,
    as_fraction,
    expectation,
    r_d,
)
from .hull import in_hull


@dataclass(frozen=True)
class ChoiceSet:
    chosen: tuple[str, ...]
    level: Fraction
    kind: Literal["optimality", "maximality"]

    def __contains__(self, label):
        return label in self.chosen

    def __iter__(self):
        return iter(self.chosen)

    def __len__(self):
        return len(self.chosen)

    def issubset(self, other: "ChoiceSet") -> bool:
        return set(self.chosen) <= set(other.chosen)


def expectation_table(problem: DecisionProblem) -> list[list[Fraction]]:
    """``table[k][d]`` is the expected payoff of decision ``d`` under charge ``k``."""
    gambles = problem.gambles
    return [[expectation(g, P) for g in gambles] for P in problem.credal]


def _check_gamma(gamma) -> Fraction:
    gamma = as_fraction(gamma)
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    return gamma


def opt_eps(problem: DecisionProblem, gamma=0, table=None) -> ChoiceSet:
    """gamma-optimal decisions; at ``gamma = 0`` these are the E-admissible ones."""
    gamma = _check_gamma(gamma)
    tol = gamma * r_d(problem)
    table = expectation_table(problem) if table is None else table
    chosen = []
    for d, label in enumerate(problem.decisions):
        if any(max(row) - row[d] <= tol for row in table):
            chosen.append(label)
    return ChoiceSet(tuple(chosen), gamma, "optimality")


def max_eps(problem: DecisionProblem, gamma=0, table=None) -> ChoiceSet:
    """gamma-maximal decisions (for every rival, some charge keeps the gap small)."""
    gamma = _check_gamma(gamma)
    tol = gamma * r_d(problem)
    table = expectation_table(problem) if table is None else table
    m = len(problem.decisions)
    chosen = []
    for d, label in enumerate(problem.decisions):
        if all(any(row[e] - row[d] <= tol for row in table) for e in range(m)):
            chosen.append(label)
    return ChoiceSet(tuple(chosen), gamma, "maximality")


def in_convex_hull(p: ProbabilityCharge, S: CredalSet) -> bool:
    """Exact test whether ``p`` is a convex combination of members of ``S``."""
    if len(p) != S.dimension:
        raise DimensionError(f"point has dimension {len(p)}, set has {S.dimension}")
    return in_hull(tuple(p), [tuple(s) for s in S])


def extreme_points(M: CredalSet) -> CredalSet:
    """Members of ``M`` that are not convex combinations of the other members."""
    members = M.dedup().members
    if len(members) == 1:
        return CredalSet(members)
    keep = []
    for i, P in enumerate(members):
        others = [tuple(Q) for j, Q in enumerate(members) if j != i]
        if not in_hull(tuple(P), others):
            keep.append(P)
    return CredalSet(tuple(keep))
