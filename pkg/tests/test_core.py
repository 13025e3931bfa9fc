from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from credalapprox.core import (
    CredalSet,
    DecisionProblem,
    DimensionError,
    Gamble,
    Partition,
    ProbabilityCharge,
    as_fraction,
    charge_close,
    credal_close,
    expectation,
    gamble_close,
    loss_close,
    r_d,
)

from conftest import charges, fractions


def problem(loss, credal=None):
    n = len(loss[0])
    credal = credal or [tuple([F(1, n)] * n)]
    return DecisionProblem(
        tuple(f"w{i}" for i in range(n)),
        tuple(f"d{i}" for i in range(len(loss))),
        tuple(tuple(r) for r in loss),
        CredalSet(tuple(credal)),
    )


# --- types -------------------------------------------------------------


def test_as_fraction_accepts_exact_inputs_only():
    assert as_fraction("0.3") == F(3, 10)
    assert as_fraction("1/3") == F(1, 3)
    assert as_fraction(2) == 2
    with pytest.raises(TypeError):
        as_fraction(0.3)


def test_charge_must_sum_to_one():
    ProbabilityCharge(("1/3", "2/3"))
    with pytest.raises(ValueError):
        ProbabilityCharge(("1/3", "1/3"))
    with pytest.raises(ValueError):
        ProbabilityCharge((F(3, 2), F(-1, 2)))


def test_credal_set_invariants():
    with pytest.raises(ValueError):
        CredalSet(())
    with pytest.raises(DimensionError):
        CredalSet(((1, 0), (1,)))
    M = CredalSet(((1, 0), (0, 1), (1, 0)))
    assert len(M) == 3
    assert M.dedup().members == (ProbabilityCharge((1, 0)), ProbabilityCharge((0, 1)))


@pytest.mark.parametrize("cells", [
    ((0, 1), (1, 2)),    # overlap
    ((0,), (2,)),        # gap
    ((0,), ()),          # empty cell
    (),
])
def test_partition_rejects_bad_cells(cells):
    with pytest.raises(ValueError):
        Partition(cells)


def test_partition_cell_masses():
    part = Partition(((0, 1), (2,), (3,)))
    P = ProbabilityCharge((F(1, 4),) * 4)
    assert part.cell_masses(P) == (F(1, 2), F(1, 4), F(1, 4))


def test_problem_shape_checks():
    with pytest.raises(DimensionError):
        DecisionProblem(("a",), ("d",), ((1, 2),), CredalSet(((1,),)))
    with pytest.raises(DimensionError):
        DecisionProblem(("a", "b"), ("d",), ((1, 2),), CredalSet(((1,),)))
    p = problem([[1, 2]])
    assert p.gamble(0).values == (-1, -2)


# --- expectation ---------------------------------------------------------


def test_expectation_examples():
    assert expectation(Gamble((1, 0)), ProbabilityCharge(("1/2", "1/2"))) == F(1, 2)
    assert expectation(Gamble((F(7, 3),) * 3), ProbabilityCharge((F(1, 6), F(1, 3), F(1, 2)))) == F(7, 3)
    # 0*1/4 + 3/10*1/4 + 3/5*1/4 + 1*1/4 = 19/40
    f = Gamble((0, "3/10", "3/5", 1))
    assert expectation(f, ProbabilityCharge((F(1, 4),) * 4)) == F(19, 40)


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionError):
        expectation(Gamble((1, 2)), ProbabilityCharge((1,)))


@given(st.data())
def test_expectation_linear_and_bounded(data):
    P = data.draw(charges())
    n = len(P)
    f = data.draw(st.lists(fractions(), min_size=n, max_size=n))
    g = data.draw(st.lists(fractions(), min_size=n, max_size=n))
    a, b = data.draw(fractions()), data.draw(fractions())
    combo = [a * x + b * y for x, y in zip(f, g)]
    assert expectation(combo, P) == a * expectation(f, P) + b * expectation(g, P)
    assert min(f) <= expectation(f, P) <= max(f)


# --- ranges --------------------------------------------------------------


@pytest.mark.parametrize("loss,expected", [
    ([[-1, 0], [0, -1]], 1),
    ([[3, 3], ["1/2", "1/2"]], 0),
    ([[-2, 0], [0, -1]], 2),
])
def test_r_d(loss, expected):
    assert r_d(problem(loss)) == expected


# --- closeness relations -------------------------------------------------


def test_gamble_close_examples():
    part = Partition(((0, 1), (2,), (3,)))
    f = Gamble((0, "3/10", "3/5", 1))
    assert gamble_close(f, Gamble((0, "3/5", 1)), part, F(1, 2))
    # 3/10 is the worst deviation, so 3/10 is the tightest eps
    assert gamble_close(f, Gamble((0, "3/5", 1)), part, F(3, 10))
    assert not gamble_close(f, Gamble((0, "3/5", 1)), part, F(29, 100))

    const = Gamble((5, 5))
    assert gamble_close(const, Gamble((5,)), Partition(((0, 1),)), 0)
    assert not gamble_close(const, Gamble((6,)), Partition(((0, 1),)), 1)

    assert not gamble_close(Gamble((0, 1)), Gamble((0, "1/2")), Partition.singletons(2), F(1, 4))


def test_gamble_close_dimension_mismatch():
    with pytest.raises(DimensionError):
        gamble_close(Gamble((0, 1)), Gamble((0,)), Partition.singletons(2), 1)


@given(st.data())
def test_gamble_close_affine_invariant(data):
    n = data.draw(st.integers(1, 6))
    f = Gamble(tuple(data.draw(st.lists(fractions(), min_size=n, max_size=n))))
    part = Partition.singletons(n)
    fhat = Gamble(tuple(v + data.draw(fractions(lo=-1, hi=1)) for v in f))
    eps = data.draw(fractions(lo=0, hi=2))
    a = data.draw(fractions(lo=0, hi=3).filter(lambda x: x > 0))
    b = data.draw(fractions())
    assert gamble_close(f, fhat, part, eps) == gamble_close(f.affine(a, b), fhat.affine(a, b), part, eps)


def test_charge_close_examples():
    part = Partition.singletons(2)
    P = ProbabilityCharge(("1/2", "1/2"))
    assert charge_close(P, P, part, 0)
    Q = ProbabilityCharge(("2/3", "1/3"))
    assert charge_close(P, Q, part, F(1, 3))
    assert not charge_close(P, Q, part, F(1, 4))


@given(st.data())
def test_charge_close_bounds_every_union_of_cells(data):
    n = data.draw(st.integers(1, 8))
    P = ProbabilityCharge(data.draw(charges(n)))
    Q = ProbabilityCharge(data.draw(charges(n)))
    part = Partition.singletons(n)
    eps = sum(abs(p - q) for p, q in zip(P, Q))
    assert charge_close(P, Q, part, eps)
    for k in range(n + 1):
        for A in combinations(range(n), k):
            assert abs(sum(P[i] for i in A) - sum(Q[i] for i in A)) <= eps


def test_credal_close_examples():
    part = Partition.singletons(2)
    M = CredalSet((("1/2", "1/2"), (1, 0)))
    assert credal_close(M, M, part, 0)
    assert credal_close(CredalSet((("1/2", "1/2"),)), CredalSet((("2/3", "1/3"),)), part, F(1, 3))
    assert not credal_close(CredalSet(((1, 0), (0, 1))), CredalSet(((1, 0),)), part, F(1, 2))
    # the converse direction matters too
    assert not credal_close(CredalSet(((1, 0),)), CredalSet(((1, 0), (0, 1))), part, F(1, 2))


def test_loss_close():
    p = problem([[0, "-3/10", "-3/5", -1]])
    part = Partition(((0, 1), (2,), (3,)))
    phat = DecisionProblem(("A1", "A2", "A3"), p.decisions, ((0, "-3/5", -1),),
                           CredalSet((("1/2", "1/4", "1/4"),)))
    assert loss_close(p, phat, part, F(1, 2))
    assert loss_close(p, p, Partition.singletons(4), 0)
    bumped = phat.with_loss(((0, 0, -1),))  # cell {w3} now off by 3/5
    assert not loss_close(p, bumped, part, F(1, 2))


def test_loss_close_decision_mismatch():
    p = problem([[0, 1]])
    q = DecisionProblem(p.states, ("other",), p.loss, p.credal)
    with pytest.raises(ValueError):
        loss_close(p, q, Partition.singletons(2), 1)
