"""Approximate choice under credal sets: exact choice functions, discretization
of losses and credal sets with certified error bounds, and size-bound tables."""

from .approx import (
    DiscretizationReport,
    InflatedLevels,
    approximate_credal,
    build_partition,
    credal_size_bound,
    discretize,
    expectation_error_bounds,
    gamma_curve,
    inflate_levels,
    partition_size_bound,
)
from .choice import ChoiceSet, extreme_points, in_convex_hull, max_eps, opt_eps
from .core import (
    CredalSet,
    DecisionProblem,
    DimensionError,
    Gamble,
    Partition,
    ProbabilityCharge,
    charge_close,
    credal_close,
    expectation,
    gamble_close,
    loss_close,
    r_d,
)
from .simplex import GridPoint, enumerate_grid, grid_cardinality, round_to_grid

__version__ = "0.1.0"
