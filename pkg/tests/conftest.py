import numpy as np
import pytest
from hypothesis import strategies as st

# Bounded, well-scaled floats keep hypothesis away from overflow noise and
# on the physics: magnitudes here are all O(1) by construction.
component = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)


@st.composite
def four_vectors(draw):
    return np.array([draw(component) for _ in range(4)])


@st.composite
def timelike_vectors(draw):
    """Raised-component vectors with a strictly positive invariant square."""
    space = np.array([draw(st.floats(-1.0, 1.0)) for _ in range(3)])
    margin = draw(st.floats(0.2, 2.0))
    sign = draw(st.sampled_from([1.0, -1.0]))
    t = sign * (np.sqrt(space @ space) + margin)
    return np.concatenate([[t], space])


@st.composite
def timelike_pairs(draw):
    """(a, b) event pairs with timelike, future-pointing separation."""
    a = np.array([draw(st.floats(-1.0, 1.0)) for _ in range(4)])
    space = np.array([draw(st.floats(-0.6, 0.6)) for _ in range(3)])
    dt = np.sqrt(space @ space) + draw(st.floats(0.3, 2.0))
    return a, a + np.concatenate([[dt], space])


@pytest.fixture
def rng():
    return np.random.default_rng(20260817)


def rel_err(x, y, floor=1.0):
    return abs(x - y) / max(floor, abs(x), abs(y))
