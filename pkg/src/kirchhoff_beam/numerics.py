"""Uniform grid on [0, 1] with composite-Simpson quadrature and difference stencils.

Every object here is immutable after construction and every function is pure,
so values can be shared freely between threads without synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, InvalidInputError

MIN_NODES = 33


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite-Simpson weights for an odd number of equispaced nodes.

    Parameters
    ----------
    n : int
        Node count; must be odd so the interval splits into Simpson panels.
    h : float
        Node spacing.

    Returns
    -------
    np.ndarray
        Weight vector w with ``w @ f`` approximating the integral of f.
    """
    if n % 2 == 0:
        raise ConfigurationError(f"composite Simpson needs an odd node count, got {n}")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


@dataclass(frozen=True)
class Grid:
    """Uniform grid x_i = i*h on [0, 1] with n nodes (odd, >= 33)."""

    n: int
    h: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)):
            raise ConfigurationError(f"grid node count must be an integer, got {self.n!r}")
        if self.n < MIN_NODES:
            raise ConfigurationError(f"grid needs at least {MIN_NODES} nodes, got {self.n}")
        if self.n % 2 == 0:
            raise ConfigurationError(
                f"grid node count must be odd (even panel count for Simpson), got {self.n}")
        h = 1.0 / (self.n - 1)
        nodes = np.linspace(0.0, 1.0, self.n)
        weights = simpson_weights(self.n, h)
        for arr in (nodes, weights):
            arr.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True)
class GridFunction:
    """Real values attached to the nodes of a :class:`Grid`."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise InvalidInputError(
                f"expected {self.grid.n} nodal values, got shape {values.shape}")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: Grid, fn) -> "GridFunction":
        return cls(grid, fn(grid.nodes))

    @classmethod
    def zeros(cls, grid: Grid) -> "GridFunction":
        return cls(grid, np.zeros(grid.n))


def require_finite(f: GridFunction, what: str = "grid function") -> None:
    if not np.all(np.isfinite(f.values)):
        raise InvalidInputError(f"{what} contains NaN or inf values")


def integrate(f: GridFunction) -> float:
    """Composite-Simpson approximation of the integral of f over [0, 1].

    Exact for polynomials of degree <= 3 sampled on the grid; O(h^4) for
    smooth integrands.
    """
    return float(f.grid.weights @ f.values)


def second_difference(u: GridFunction) -> GridFunction:
    """Central second difference (u_{i-1} - 2u_i + u_{i+1}) / h^2.

    Endpoint values are set to zero, which is the curvature boundary
    condition u''(0) = u''(1) = 0 of the simply supported beam.
    """
    v = u.values
    out = np.zeros_like(v)
    out[1:-1] = (v[:-2] - 2.0 * v[1:-1] + v[2:]) / (u.grid.h ** 2)
    return GridFunction(u.grid, out)


def sup_norm(u: GridFunction) -> float:
    """Maximum absolute nodal value."""
    return float(np.max(np.abs(u.values)))
