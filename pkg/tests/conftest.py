import numpy as np
import pytest

from src.channel import draw_channels
from src.utils.rng import complex_normal


@pytest.fixture
def rng():
    return np.random.default_rng(20190611)


@pytest.fixture
def cgauss(rng):
    """Draw CN(0, 1) arrays of a given shape."""
    def draw(*shape):
        return complex_normal(rng, shape)
    return draw


@pytest.fixture
def small_channels(rng):
    """N=8 antennas, N_f=4 sub-carriers, L_p=2 taps, K_t=6 users."""
    return draw_channels("rayleigh", 8, 4, 2, 6, rng)
