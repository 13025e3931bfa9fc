"""Randomized exact checks of the approximation guarantees.

Every check takes a :class:`DecisionProblem` and returns a list of violation
strings (empty when the property holds) or raises :class:`Skip` when the
property does not apply to the problem.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from . import problemfile
from .approx import (
    InflatedLevels,
    approximate_credal,
    build_partition,
    discretize,
    expectation_error_bounds,
    grid_size_for,
    inflate_levels,
)
from .choice import expectation_table, extreme_points, max_eps, opt_eps
from .core import (
    CredalSet,
    DecisionProblem,
    Partition,
    ProbabilityCharge,
    credal_close,
    expectation,
    loss_close,
)
from .simplex import round_to_grid

F = Fraction

PARTITION_EPS = (F(1, 2), F(1, 4), F(1, 10))
GRID_DELTA = (F(1, 2), F(1, 4), F(1, 10))
EXPECTATION_EPS = (F(1, 4), F(1, 10), F(1, 20))
TRANSFER_EPS = (F(1, 10), F(1, 20))
TRANSFER_DELTA = (F(1, 10), F(1, 20))
TRANSFER_GAMMA = (F(0), F(1, 20), F(1, 10))
ETA_LADDER = tuple(F(1, 2**k) for k in range(21)) + (F(1, 10**9),)
CLOSURE_LADDER = tuple(F(1, 2**k) for k in range(21))
ALGEBRA_GAMMA = (F(0), F(1, 20), F(1, 10), F(1, 4), F(1, 2), F(1))
AFFINE_MAPS = ((F(2), F(1)), (F(1, 3), F(-5)), (F(7, 2), F(0)))

InflateFn = Callable[[Fraction, Fraction, Fraction], InflatedLevels]


class Skip(Exception):
    """Property not applicable to this problem (e.g. zero payoff range)."""


# ---------------------------------------------------------------------------
# problem generation


def random_charge(rng: random.Random, n: int, max_den: int = 12) -> ProbabilityCharge:
    q = rng.randint(1, max_den)
    counts = [0] * n
    for _ in range(q):
        counts[rng.randrange(n)] += 1
    return ProbabilityCharge(tuple(F(c, q) for c in counts))


def random_problem(
    rng: random.Random,
    max_states: int = 8,
    max_decisions: int = 4,
    max_charges: int = 5,
    max_den: int = 12,
) -> DecisionProblem:
    """Small problem with entries on a rational lattice of denominators <= ``max_den``."""
    n = rng.randint(1, max_states)
    m = rng.randint(1, max_decisions)
    constant = rng.random() < 0.05
    loss = []
    for _ in range(m):
        q = rng.randint(1, max_den)
        if constant:
            loss.append((F(rng.randint(-q, q), q),) * n)
        else:
            loss.append(tuple(F(rng.randint(-q, q), q) for _ in range(n)))
    k = rng.randint(1, max_charges)
    credal = CredalSet(tuple(random_charge(rng, n, max_den) for _ in range(k)))
    return DecisionProblem(
        tuple(f"w{i + 1}" for i in range(n)),
        tuple(f"d{i + 1}" for i in range(m)),
        tuple(loss),
        credal,
    )


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


# ---------------------------------------------------------------------------
# individual properties


def _chosen(cs) -> set:
    return set(cs.chosen)


def check_partition(problem: DecisionProblem) -> list[str]:
    out = []
    for eps in PARTITION_EPS:
        part, approx = build_partition(problem, eps)
        if not loss_close(problem, approx, part, eps):
            out.append(f"loss not {eps}-close after partitioning")
        bound = (1 + 1 / eps) ** len(problem.decisions)
        if len(part) > bound:
            out.append(f"{len(part)} cells exceed bound {bound} at eps={eps}")
    return out


def check_credal_grid(problem: DecisionProblem) -> list[str]:
    out = []
    parts = [Partition.singletons(len(problem.states)), build_partition(problem, F(1, 4))[0]]
    for part, delta in product(parts, GRID_DELTA):
        Mhat = approximate_credal(problem.credal, part, delta)
        if not credal_close(problem.credal, Mhat, part, delta):
            out.append(f"credal set not {delta}-close on {len(part)} cells")
        N = grid_size_for(len(part), delta)
        if len(Mhat) > math.comb(N + len(part) - 1, len(part) - 1):
            out.append(f"|Mhat|={len(Mhat)} exceeds grid cardinality")
    return out


def check_expectation(problem: DecisionProblem) -> list[str]:
    out = []
    for eps, delta in product(EXPECTATION_EPS, GRID_DELTA):
        part, approx = build_partition(problem, eps)
        N = grid_size_for(len(part), delta)
        for d in range(len(problem.decisions)):
            f, fhat = problem.gamble(d), approx.gamble(d)
            b1, b2 = expectation_error_bounds(f.range, fhat.range, eps, delta)
            for P in problem.credal:
                Phat = round_to_grid(part.cell_masses(P), N).values
                gap = abs(expectation(f, P) - expectation(fhat, Phat))
                if gap > b1 or gap > b2:
                    out.append(
                        f"|E_P(f)-E_Phat(fhat)|={gap} exceeds ({b1}, {b2}) "
                        f"at eps={eps}, delta={delta}, decision {problem.decisions[d]}"
                    )
    return out


def check_opt_transfer(problem: DecisionProblem, inflate: InflateFn = inflate_levels) -> list[str]:
    out = []
    table = expectation_table(problem)
    for eps, delta in product(TRANSFER_EPS, TRANSFER_DELTA):
        approx = discretize(problem, eps, delta).approx_problem
        atable = expectation_table(approx)
        for gamma in TRANSFER_GAMMA:
            lv = inflate(gamma, eps, delta)
            orig = _chosen(opt_eps(problem, gamma, table))
            fwd = _chosen(opt_eps(approx, lv.forward, atable))
            if not orig <= fwd:
                out.append(f"opt forward: {sorted(orig - fwd)} lost at gamma={gamma}, eps={eps}, delta={delta}")
            app = _chosen(opt_eps(approx, gamma, atable))
            back = _chosen(opt_eps(problem, lv.backward, table))
            if not app <= back:
                out.append(f"opt backward: {sorted(app - back)} lost at gamma={gamma}, eps={eps}, delta={delta}")
    return out


def _max_over_ladder(problem, base, table) -> set:
    chosen = set(problem.decisions)
    for eta in ETA_LADDER:
        chosen &= _chosen(max_eps(problem, base + eta, table))
    return chosen


def check_max_transfer(problem: DecisionProblem, inflate: InflateFn = inflate_levels) -> list[str]:
    out = []
    table = expectation_table(problem)
    ext = extreme_points(problem.credal)
    for eps, delta in product(TRANSFER_EPS, TRANSFER_DELTA):
        approx = discretize(problem, eps, delta, credal=ext).approx_problem
        atable = expectation_table(approx)
        for gamma in TRANSFER_GAMMA:
            lv = inflate(gamma, eps, delta)
            orig = _chosen(max_eps(problem, gamma, table))
            fwd = _max_over_ladder(approx, lv.forward, atable)
            if not orig <= fwd:
                out.append(f"max forward: {sorted(orig - fwd)} lost at gamma={gamma}, eps={eps}, delta={delta}")
            app = _chosen(max_eps(approx, gamma, atable))
            back = _max_over_ladder(problem, lv.backward, table)
            if not app <= back:
                out.append(f"max backward: {sorted(app - back)} lost at gamma={gamma}, eps={eps}, delta={delta}")
    return out


def check_choice_algebra(problem: DecisionProblem) -> list[str]:
    out = []
    table = expectation_table(problem)
    opts = [_chosen(opt_eps(problem, g, table)) for g in ALGEBRA_GAMMA]
    maxs = [_chosen(max_eps(problem, g, table)) for g in ALGEBRA_GAMMA]
    for g, o, m in zip(ALGEBRA_GAMMA, opts, maxs):
        if not o <= m:
            out.append(f"opt not inside max at gamma={g}")
        if not o:
            out.append(f"empty opt at gamma={g}")
    for i in range(len(ALGEBRA_GAMMA) - 1):
        if not opts[i] <= opts[i + 1]:
            out.append(f"opt not nested between {ALGEBRA_GAMMA[i]} and {ALGEBRA_GAMMA[i + 1]}")
        if not maxs[i] <= maxs[i + 1]:
            out.append(f"max not nested between {ALGEBRA_GAMMA[i]} and {ALGEBRA_GAMMA[i + 1]}")
    for a, b in AFFINE_MAPS:
        moved = problem.affine_loss(a, b)
        mtable = expectation_table(moved)
        for g, o, m in zip(ALGEBRA_GAMMA, opts, maxs):
            if _chosen(opt_eps(moved, g, mtable)) != o or _chosen(max_eps(moved, g, mtable)) != m:
                out.append(f"choice changed under loss -> {a}*L+{b} at gamma={g}")
    for P in problem.credal.dedup():
        single = problem.with_credal(CredalSet((P,)))
        stable = expectation_table(single)
        for g in ALGEBRA_GAMMA:
            if opt_eps(single, g, stable).chosen != max_eps(single, g, stable).chosen:
                out.append(f"opt != max for singleton credal set at gamma={g}")
    return out


def check_hull_invariance(problem: DecisionProblem, rng: random.Random | None = None) -> list[str]:
    """max is unchanged by adding convex combinations or by keeping only extreme points."""
    rng = rng or random.Random(0)
    out = []
    members = list(problem.credal)
    extra = []
    for _ in range(3):
        P, Q = rng.choice(members), rng.choice(members)
        lam = F(rng.randint(0, 6), 6)
        extra.append(ProbabilityCharge(tuple(lam * p + (1 - lam) * q for p, q in zip(P, Q))))
    widened = problem.with_credal(CredalSet(tuple(members + extra)))
    reduced = problem.with_credal(extreme_points(problem.credal))
    for g in ALGEBRA_GAMMA:
        base = max_eps(problem, g).chosen
        if max_eps(widened, g).chosen != base:
            out.append(f"max changed after adding convex combinations at gamma={g}")
        if max_eps(reduced, g).chosen != base:
            out.append(f"max changed after reducing to extreme points at gamma={g}")
    return out


def check_closure_ladder(problem: DecisionProblem) -> list[str]:
    """Finite credal sets are closed: the shrinking-level intersection recovers the set."""
    out = []
    table = expectation_table(problem)
    for eps in (F(0), F(1, 20), F(1, 10)):
        for name, fn in (("max", max_eps), ("opt", opt_eps)):
            inter = set(problem.decisions)
            for delta in CLOSURE_LADDER:
                inter &= _chosen(fn(problem, eps + delta, table))
            if inter != _chosen(fn(problem, eps, table)):
                out.append(f"{name} at {eps} differs from its ladder intersection")
    return out


PROPERTIES: dict[str, Callable[..., list[str]]] = {
    "partition_certificate": check_partition,
    "credal_certificate": check_credal_grid,
    "expectation_bounds": check_expectation,
    "opt_transfer": check_opt_transfer,
    "max_transfer": check_max_transfer,
    "choice_algebra": check_choice_algebra,
    "hull_invariance": check_hull_invariance,
    "closure_ladder": check_closure_ladder,
}

INFLATING = {"opt_transfer", "max_transfer"}


# ---------------------------------------------------------------------------
# harness


@dataclass
class Tally:
    passed: int = 0
    skipped: int = 0
    failed: int = 0


@dataclass
class VerifyReport:
    trials: int
    seed: int | None
    tallies: dict[str, Tally] = field(default_factory=lambda: {k: Tally() for k in PROPERTIES})
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies.values())

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "ok": self.ok,
            "properties": {
                k: {"passed": t.passed, "skipped": t.skipped, "failed": t.failed}
                for k, t in self.tallies.items()
            },
            "counterexamples": self.counterexamples,
        }


def verify_problem(
    problem: DecisionProblem,
    report: VerifyReport,
    trial: int,
    rng: random.Random,
    inflate: InflateFn = inflate_levels,
    properties: Iterable[str] | None = None,
) -> None:
    for name in properties or PROPERTIES:
        check = PROPERTIES[name]
        tally = report.tallies[name]
        try:
            if name in INFLATING:
                problems = check(problem, inflate)
            elif name == "hull_invariance":
                problems = check(problem, rng)
            else:
                problems = check(problem)
        except Skip:
            tally.skipped += 1
            continue
        if problems:
            tally.failed += 1
            report.counterexamples.append({
                "property": name,
                "trial": trial,
                "violations": problems,
                "problem": problemfile.problem_to_dict(problem),
            })
        else:
            tally.passed += 1


def run_verify(
    trials: int,
    seed: int = 0,
    max_states: int = 8,
    max_decisions: int = 4,
    inflate: InflateFn = inflate_levels,
    properties: Iterable[str] | None = None,
) -> VerifyReport:
    """Check every property on ``trials`` random problems drawn from ``seed``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    properties = list(properties or PROPERTIES)
    report = VerifyReport(trials, seed, {k: Tally() for k in properties})
    for t in range(trials):
        rng = trial_rng(seed, t)
        problem = random_problem(rng, max_states, max_decisions)
        verify_problem(problem, report, t, rng, inflate, properties)
    return report


def verify_problems(
    problems: Iterable[DecisionProblem],
    inflate: InflateFn = inflate_levels,
    properties: Iterable[str] | None = None,
) -> VerifyReport:
    """Check every property on the given problems (replay of stored cases)."""
    problems = list(problems)
    properties = list(properties or PROPERTIES)
    report = VerifyReport(len(problems), None, {k: Tally() for k in properties})
    for t, problem in enumerate(problems):
        verify_problem(problem, report, t, random.Random(t), inflate, properties)
    return report
