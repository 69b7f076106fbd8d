import numpy as np
import pytest

from ltvbounds import Signal, TimeGrid, default_grid, make_gaussian


@pytest.fixture(scope="session")
def grid() -> TimeGrid:
    return default_grid()


@pytest.fixture(scope="session")
def gauss(grid) -> Signal:
    return make_gaussian(grid)


def random_pulse(grid: TimeGrid, rng: np.random.Generator) -> Signal:
    """A unit-norm Gaussian-envelope pulse with random placement.

    Random center, width and modulation keep the signal well localized
    inside the grid (tails below 1e-12), so the periodic shift operators
    act on it exactly like the continuum ones.
    """
    center = (rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
    width = rng.uniform(0.6, 1.6)
    return make_gaussian(grid, center, width)
