"""Exact domain types, expectation, ranges and the approximation relations.

Everything here works on :class:`fractions.Fraction`; floats are rejected
on construction so that set containments downstream are exact facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Vectors, partitions or problems of incompatible sizes."""


def as_fraction(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Integers, fractions and strings such as ``"1/3"`` or ``"0.3"`` are
    accepted. Floats are refused: ``0.3`` has no exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} exactly to a rational")


def _fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


@dataclass(frozen=True)
class Gamble:
    """Payoff vector, one value per state (or per partition cell)."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _fractions(self.values))
        if not self.values:
            raise DimensionError("a gamble needs at least one state")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def sup(self) -> Fraction:
        return max(self.values)

    @property
    def inf(self) -> Fraction:
        return min(self.values)

    @property
    def range(self) -> Fraction:
        return self.sup - self.inf

    def affine(self, a, b=0) -> "Gamble":
        """Return ``a * self + b``."""
        a, b = as_fraction(a), as_fraction(b)
        return Gamble(tuple(a * v + b for v in self.values))


@dataclass(frozen=True)
class ProbabilityCharge:
    """Probability vector on a finite space; weights are >= 0 and sum to 1."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = _fractions(self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise DimensionError("a charge needs at least one state")
        if any(w < 0 for w in weights):
            raise ValueError(f"negative weight in {weights}")
        if sum(weights) != 1:
            raise ValueError(f"weights sum to {sum(weights)}, not 1")

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


@dataclass(frozen=True)
class CredalSet:
    """Finite, non-empty collection of charges of equal dimension."""

    members: tuple[ProbabilityCharge, ...]

    def __post_init__(self):
        members = tuple(
            m if isinstance(m, ProbabilityCharge) else ProbabilityCharge(m)
            for m in self.members
        )
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a credal set must be non-empty")
        dims = {len(m) for m in members}
        if len(dims) != 1:
            raise DimensionError(f"members have differing dimensions {sorted(dims)}")

    @property
    def dimension(self) -> int:
        return len(self.members[0])

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def dedup(self) -> "CredalSet":
        """Drop repeated members, keeping first occurrences in order."""
        return CredalSet(tuple(dict.fromkeys(self.members)))


@dataclass(frozen=True)
class Partition:
    """Ordered cells of ground-state indices ``0..n-1``."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(int(i) for i in c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("a partition needs at least one cell")
        if any(not c for c in cells):
            raise ValueError("empty cell in partition")
        members = [i for c in cells for i in c]
        if len(set(members)) != len(members):
            raise ValueError("partition cells overlap")
        if set(members) != set(range(len(members))):
            raise ValueError("partition cells must cover 0..n-1 exactly")

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(n)))

    @property
    def n_states(self) -> int:
        return sum(len(c) for c in self.cells)

    def __len__(self):
        return len(self.cells)

    def cell_masses(self, charge: ProbabilityCharge) -> tuple[Fraction, ...]:
        """P(A) for each cell A, summing the ground weights."""
        if len(charge) != self.n_states:
            raise DimensionError(
                f"charge has {len(charge)} states, partition covers {self.n_states}"
            )
        return tuple(sum((charge[i] for i in c), Fraction(0)) for c in self.cells)


@dataclass(frozen=True)
class DecisionProblem:
    """Finite decision problem: states, decisions, loss matrix, credal set.

    ``loss[d][w]`` is the loss of decision ``d`` in state ``w``; the gamble
    of ``d`` is the negated loss row.
    """

    states: tuple[str, ...]
    decisions: tuple[str, ...]
    loss: tuple[tuple[Fraction, ...], ...]
    credal: CredalSet

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(str(s) for s in self.states))
        object.__setattr__(self, "decisions", tuple(str(d) for d in self.decisions))
        object.__setattr__(self, "loss", tuple(_fractions(r) for r in self.loss))
        if not isinstance(self.credal, CredalSet):
            object.__setattr__(self, "credal", CredalSet(tuple(self.credal)))
        if not self.states or not self.decisions:
            raise DimensionError("need at least one state and one decision")
        if len(set(self.decisions)) != len(self.decisions):
            raise ValueError("decision labels must be unique")
        if len(self.loss) != len(self.decisions):
            raise DimensionError(
                f"{len(self.loss)} loss rows for {len(self.decisions)} decisions"
            )
        for row in self.loss:
            if len(row) != len(self.states):
                raise DimensionError(
                    f"loss row of length {len(row)} for {len(self.states)} states"
                )
        if self.credal.dimension != len(self.states):
            raise DimensionError(
                f"credal set has dimension {self.credal.dimension}, "
                f"problem has {len(self.states)} states"
            )

    def gamble(self, d: int) -> Gamble:
        return Gamble(tuple(-v for v in self.loss[d]))

    @cached_property
    def gambles(self) -> tuple[Gamble, ...]:
        return tuple(self.gamble(d) for d in range(len(self.decisions)))

    @cached_property
    def payoff_range(self) -> Fraction:
        return max(g.range for g in self.gambles)

    def with_credal(self, credal) -> "DecisionProblem":
        if not isinstance(credal, CredalSet):
            credal = CredalSet(tuple(credal))
        return DecisionProblem(self.states, self.decisions, self.loss, credal)

    def with_loss(self, loss) -> "DecisionProblem":
        return DecisionProblem(self.states, self.decisions, loss, self.credal)

    def affine_loss(self, a, b=0) -> "DecisionProblem":
        """Problem with loss ``a * L + b``."""
        a, b = as_fraction(a), as_fraction(b)
        return self.with_loss(tuple(tuple(a * v + b for v in r) for r in self.loss))


def expectation(f: Gamble | Sequence, P: ProbabilityCharge | Sequence) -> Fraction:
    """Exact expectation of ``f`` under ``P``."""
    if len(f) != len(P):
        raise DimensionError(f"gamble has {len(f)} states, charge has {len(P)}")
    return sum((as_fraction(x) * as_fraction(p) for x, p in zip(f, P)), Fraction(0))


def r_d(problem: DecisionProblem) -> Fraction:
    """Largest payoff range over all decisions."""
    return problem.payoff_range


def gamble_close(f: Gamble, fhat: Gamble, part: Partition, eps) -> bool:
    """Whether every ground value is within ``range(f) * eps`` of its cell value."""
    eps = as_fraction(eps)
    if len(fhat) != len(part):
        raise DimensionError(f"fhat has {len(fhat)} cells, partition has {len(part)}")
    if len(f) != part.n_states:
        raise DimensionError(f"f has {len(f)} states, partition covers {part.n_states}")
    bound = f.range * eps
    return all(abs(f[w] - fhat[j]) <= bound for j, cell in enumerate(part.cells) for w in cell)


def charge_distance(P: ProbabilityCharge, Phat: ProbabilityCharge, part: Partition) -> Fraction:
    """L1 distance between the cell masses of ``P`` and ``Phat``."""
    if len(Phat) != len(part):
        raise DimensionError(f"Phat has {len(Phat)} cells, partition has {len(part)}")
    return sum(
        (abs(a - b) for a, b in zip(part.cell_masses(P), Phat)), Fraction(0)
    )


def charge_close(P: ProbabilityCharge, Phat: ProbabilityCharge, part: Partition, eps) -> bool:
    return charge_distance(P, Phat, part) <= as_fraction(eps)


def credal_close(M: CredalSet, Mhat: CredalSet, part: Partition, delta) -> bool:
    """Both covering conditions: every P has a close Phat and vice versa."""
    delta = as_fraction(delta)
    if M.dimension != part.n_states or Mhat.dimension != len(part):
        raise DimensionError("credal sets do not match the partition")
    dist = [[charge_distance(P, Q, part) for Q in Mhat] for P in M]
    forward = all(any(x <= delta for x in row) for row in dist)
    backward = all(any(row[j] <= delta for row in dist) for j in range(len(Mhat)))
    return forward and backward


def loss_close(prob: DecisionProblem, probhat: DecisionProblem, part: Partition, eps) -> bool:
    """Row-wise :func:`gamble_close` over all decisions."""
    if prob.decisions != probhat.decisions:
        raise ValueError("problems have different decision sets")
    return all(
        gamble_close(prob.gamble(d), probhat.gamble(d), part, eps)
        for d in range(len(prob.decisions))
    )
