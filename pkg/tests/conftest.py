import random

import pytest
from hypothesis import strategies as st
from fractions import Fraction


def fractions01(max_den=12):
    return st.builds(lambda d, k: Fraction(k % (d + 1), d), st.integers(1, max_den), st.integers(0, 10_000))


@pytest.fixture
def rng():
    return random.Random(1234)
