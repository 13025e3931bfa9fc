"""Discretization of a decision problem and the accompanying error/size bounds.

The pipeline coarsens the state space so that every loss row moves by at
most ``eps`` relative to its range, then rounds every credal member onto
the simplex grid so that it moves by at most ``delta`` in L1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    CredalSet,
    DecisionProblem,
    Partition,
    ProbabilityCharge,
    as_fraction,
)
from .simplex import round_to_grid

# largest top argument for which math.comb is used instead of lgamma
EXACT_COMB_LIMIT = 5000

LN10 = math.log(10)


@dataclass(frozen=True)
class InflatedLevels:
    """Choice levels that absorb discretization error, one per direction."""

    forward: Fraction
    backward: Fraction


@dataclass(frozen=True)
class DiscretizationReport:
    partition: Partition
    approx_problem: DecisionProblem
    eps: Fraction
    delta: Fraction
    grid_N: int
    partition_bound: Fraction
    grid_bound: int
    credal_bound: float


def _bin_row(values: Sequence[Fraction], eps: Fraction) -> list[int]:
    lo, hi = min(values), max(values)
    width = (hi - lo) * eps
    if width == 0:
        return [0] * len(values)
    # half-open bins [lo + j*width, lo + (j+1)*width)
    return [math.floor((v - lo) / width) for v in values]


def build_partition(problem: DecisionProblem, eps) -> tuple[Partition, DecisionProblem]:
    """Coarsen the states so that each gamble is ``eps``-close to a cell-wise one.

    Each decision bins its states into half-open intervals of width
    ``range * eps``; the cells are the non-empty intersections of those bins,
    ordered by smallest member. The approximate gamble takes the cell minimum.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    gambles = problem.gambles
    bins = [_bin_row(g.values, eps) for g in gambles]
    n = len(problem.states)
    groups: dict[tuple[int, ...], list[int]] = {}
    for w in range(n):
        groups.setdefault(tuple(b[w] for b in bins), []).append(w)
    cells = tuple(tuple(c) for c in groups.values())  # insertion order = smallest member
    part = Partition(cells)

    loss_hat = tuple(
        tuple(-min(g[w] for w in cell) for cell in cells) for g in gambles
    )
    masses = [part.cell_masses(P) for P in problem.credal]
    approx = DecisionProblem(
        states=tuple(f"A{j + 1}" for j in range(len(cells))),
        decisions=problem.decisions,
        loss=loss_hat,
        credal=CredalSet(tuple(dict.fromkeys(ProbabilityCharge(m) for m in masses))),
    )
    return part, approx


def grid_size_for(n_cells: int, delta) -> int:
    """Smallest natural ``N`` with ``N >= n_cells / delta``."""
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    return math.ceil(Fraction(n_cells) / delta)


def approximate_credal(M: CredalSet, part: Partition, delta) -> CredalSet:
    """Round every member's cell masses onto the grid with ``N = ceil(n/delta)``."""
    N = grid_size_for(len(part), delta)
    rounded = (round_to_grid(part.cell_masses(P), N).as_charge() for P in M)
    return CredalSet(tuple(dict.fromkeys(rounded)))


def discretize(problem: DecisionProblem, eps, delta, credal: CredalSet | None = None) -> DiscretizationReport:
    """Run both approximation steps and collect the bounds.

    ``credal`` overrides the set that gets rounded; pass the extreme points of
    the problem's credal set to build the pairwise-choice approximation.
    """
    eps, delta = as_fraction(eps), as_fraction(delta)
    part, coarse = build_partition(problem, eps)
    source = problem.credal if credal is None else credal
    Mhat = approximate_credal(source, part, delta)
    n = len(part)
    N = grid_size_for(n, delta)
    return DiscretizationReport(
        partition=part,
        approx_problem=coarse.with_credal(Mhat),
        eps=eps,
        delta=delta,
        grid_N=N,
        partition_bound=(1 + 1 / eps) ** len(problem.decisions),
        grid_bound=math.comb(N + n - 1, n - 1),
        credal_bound=_binom(float(n * (1 + 1 / delta)), float(n - 1)),
    )


def _log10_binom(a: float, b: float) -> float:
    """log10 of the generalized binomial Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1))."""
    if not a >= b >= 0:
        raise ValueError(f"need a >= b >= 0, got a={a}, b={b}")
    if float(a).is_integer() and float(b).is_integer() and a <= EXACT_COMB_LIMIT:
        c = math.comb(int(a), int(b))
        return math.log10(c)
    return (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)) / LN10


def _binom(a: float, b: float) -> float:
    try:
        return 10.0 ** _log10_binom(a, b)
    except OverflowError:
        return math.inf


def partition_size_bound(eps: float, d_count: int) -> float:
    """log10 of ``(1 + 1/eps) ** d_count``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if d_count < 1:
        raise ValueError("d_count must be positive")
    return d_count * math.log10(1 + 1 / eps)


def credal_size_bound(n_cells: int, delta: float) -> float:
    """log10 of ``C(n (1 + 1/delta), n - 1)``."""
    if n_cells < 1:
        raise ValueError("n_cells must be positive")
    if delta <= 0:
        raise ValueError("delta must be positive")
    top = n_cells * (1 + 1 / delta)
    if abs(top - round(top)) < 1e-9:
        top = float(round(top))
    return _log10_binom(top, float(n_cells - 1))


def _check_eps(eps: Fraction) -> None:
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")


def expectation_error_bounds(R, Rhat, eps, delta) -> tuple[Fraction, Fraction]:
    """Two bounds on ``|E_P(f) - E_Phat(fhat)|``, in terms of ``range(f)`` and
    ``range(fhat)`` respectively."""
    R, Rhat, eps, delta = map(as_fraction, (R, Rhat, eps, delta))
    _check_eps(eps)
    if R < 0 or Rhat < 0 or delta < 0:
        raise ValueError("ranges and delta must be non-negative")
    return (
        R * (eps + delta * (1 + 2 * eps)),
        Rhat * (eps / (1 - 2 * eps) + delta),
    )


def inflate_levels(gamma, eps, delta) -> InflatedLevels:
    gamma, eps, delta = map(as_fraction, (gamma, eps, delta))
    _check_eps(eps)
    if gamma < 0 or delta < 0:
        raise ValueError("gamma and delta must be non-negative")
    return InflatedLevels(
        forward=gamma / (1 - 2 * eps) + 2 * (eps / (1 - 2 * eps) + delta),
        backward=gamma * (1 + 2 * eps) + 2 * (eps + delta * (1 + 2 * eps)),
    )


def _round_half_up(x: float) -> float:
    return float(math.floor(x + 0.5))


def curve_value(eps: float, delta: float, d_count: int, rounded: bool = True) -> float:
    """log10 of ``C(1/(eps^|D| delta), 1/eps^|D|)``.

    With ``rounded`` each Gamma argument is rounded to the nearest integer
    separately, which is how the published curve was evaluated.
    """
    k = 1.0 / eps**d_count
    top = k / delta
    if not rounded:
        return _log10_binom(top, k)
    a, b, c = _round_half_up(top), _round_half_up(k), _round_half_up(top - k)
    return (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(c + 1)) / LN10


def gamma_curve(gamma_star: float, d_count: int, eps_grid: Iterable[float], rounded: bool = True) -> list[tuple[float, float]]:
    """Credal-size bound along ``eps + delta = gamma_star``."""
    if gamma_star <= 0:
        raise ValueError("gamma_star must be positive")
    out = []
    for eps in eps_grid:
        if not 0 < eps < gamma_star:
            raise ValueError(f"eps={eps} outside (0, {gamma_star})")
        out.append((eps, curve_value(eps, gamma_star - eps, d_count, rounded)))
    return out


def default_eps_grid(gamma_star: float, steps: int) -> list[float]:
    """``steps - 1`` interior points ``i * gamma_star / steps``."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return [round(i * gamma_star / steps, 12) for i in range(1, steps)]
