import math

import numpy as np
import pytest

from kirchhoff_beam import Grid, GridFunction, ProblemParams


@pytest.fixture(scope="session")
def grid257():
    return Grid(257)


@pytest.fixture(scope="session")
def sin_pi(grid257):
    return GridFunction.from_callable(grid257, lambda x: np.sin(math.pi * x))


@pytest.fixture(scope="session")
def params_b1():
    return ProblemParams(a=1.0, b=1.0)


@pytest.fixture(scope="session")
def params_b0():
    return ProblemParams(a=1.0, b=0.0)


def random_trig_poly(rng, grid, degree=5):
    """Random trigonometric polynomial of the given degree on the grid."""
    x = grid.nodes
    vals = np.zeros(grid.n)
    for k in range(1, degree + 1):
        ak, bk = rng.normal(size=2)
        vals += ak * np.sin(k * math.pi * x) + bk * np.cos(k * math.pi * x)
    vals += rng.normal()
    return vals


def random_one_signed_trig(rng, grid, degree=5):
    """One-signed smooth sample: trig polynomial shifted off zero, random sign."""
    vals = random_trig_poly(rng, grid, degree)
    vals = vals - vals.min() + 0.05 * (vals.max() - vals.min() + 0.1)
    if rng.random() < 0.5:
        vals = -vals
    return GridFunction(grid, vals)
