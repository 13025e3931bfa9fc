"""Coarsen a fine problem and compare its choices against the coarse one.

The ground space has 200 states on a coarse payoff lattice. Choices made
on one side are recovered on the other side at the inflated levels.
"""

import random
from fractions import Fraction as F

from credalapprox import (
    CredalSet,
    DecisionProblem,
    discretize,
    inflate_levels,
    max_eps,
    opt_eps,
)
from credalapprox.choice import extreme_points

rng = random.Random(3)
n = 200
loss = tuple(tuple(F(rng.randint(-2, 2), 2) for _ in range(n)) for _ in range(3))


def charge():
    raw = [rng.randint(0, 9) for _ in range(n)]
    return tuple(F(r, sum(raw)) for r in raw)


problem = DecisionProblem(
    tuple(f"w{i}" for i in range(n)), ("a", "b", "c"), loss, CredalSet(tuple(charge() for _ in range(6)))
)

eps, delta, gamma = F(1, 20), F(1, 20), F(0)
rep = discretize(problem, eps, delta, credal=extreme_points(problem.credal))
coarse = rep.approx_problem
print(f"{n} states -> {len(rep.partition)} cells (bound {rep.partition_bound})")
print(f"{len(problem.credal)} charges -> {len(coarse.credal)} grid charges on N={rep.grid_N}")

lv = inflate_levels(gamma, eps, delta)
print(f"levels: forward {lv.forward}, backward {lv.backward}")
for name, fn in (("opt", opt_eps), ("max", max_eps)):
    # forward: original at gamma sits inside coarse at the forward level
    print(f"{name} original@gamma {fn(problem, gamma).chosen}  coarse@forward {fn(coarse, lv.forward).chosen}")
    # backward: coarse at gamma sits inside original at the backward level
    print(f"{name} coarse@gamma   {fn(coarse, gamma).chosen}  original@backward {fn(problem, lv.backward).chosen}")
