import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from symplabic import fixtures as fx
from symplabic.scalar import Scalar

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
positive_fractions = st.fractions(min_value=Fraction(1, 12), max_value=12, max_denominator=12)


@st.composite
def scalars(draw, nonzero=False):
    a = draw(small_fractions)
    b = draw(small_fractions)
    s = Scalar(a, b)
    if nonzero and not s:
        s = Scalar(1)
    return s


@st.composite
def positive_scalars(draw):
    return Scalar(draw(positive_fractions))


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def cycle_graph():
    return fx.cycle_graph()


@pytest.fixture
def square_graph():
    return fx.square_graph()


@pytest.fixture
def orthogonal_square_graph():
    return fx.orthogonal_square_graph()


@pytest.fixture
def ladder_graph():
    return fx.ladder_graph()


@pytest.fixture
def double_square_graph():
    return fx.double_square_graph()
