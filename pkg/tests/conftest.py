from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from credalapprox import problemfile

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


def load_problem(name):
    return problemfile.load(DATA / name)


def fractions(max_den=12, lo=-3, hi=3):
    return st.builds(
        lambda q, k: Fraction(k, q),
        st.integers(1, max_den),
        st.integers(lo * max_den, hi * max_den),
    ).filter(lambda x: lo <= x <= hi)


@st.composite
def charges(draw, n=None, max_den=20):
    """Probability vectors with rational weights."""
    if n is None:
        n = draw(st.integers(1, 6))
    weights = draw(st.lists(st.integers(0, max_den), min_size=n, max_size=n))
    if sum(weights) == 0:
        weights[0] = 1
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)
