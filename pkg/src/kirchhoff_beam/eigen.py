"""Closed-form solutions of the beam eigenproblem with load lam * u.

The linear problem u'''' - A u'' = lam * u with pinned, moment-free ends has
eigenvalues lam = (k*pi)^4 + A*(k*pi)^2 with eigenfunctions sin(k*pi*x).
With the nonlocal coefficient A = a + b*int(u')^2, a positive solution
exists exactly for lam above the principal eigenvalue at A = a, and then the
stretch integral and amplitude are pinned down in closed form:

    E = (lam - pi^4 - a*pi^2) / (b*pi^2),   amplitude = sqrt(2E)/pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DomainError, NoPositiveSolution, ParameterDegenerate
from .linear_core import ProblemParams
from .numerics import Grid, GridFunction, sup_norm
from . import nonlocal_solver

PI2 = math.pi ** 2
PI4 = PI2 ** 2


def principal_eigenvalue(coefficient: float) -> float:
    """Smallest eigenvalue pi^4 + A*pi^2 of u'''' - A u'' = lam*u, for A >= 0."""
    if coefficient < 0.0:
        raise DomainError(f"coefficient must be >= 0, got {coefficient}")
    return PI4 + coefficient * PI2


def mode_eigenvalue(mode: int, coefficient: float) -> float:
    """Eigenvalue (k*pi)^4 + A*(k*pi)^2 of mode k >= 1 (eigenfunction sin(k*pi*x))."""
    if mode < 1:
        raise DomainError(f"mode index must be >= 1, got {mode}")
    if coefficient < 0.0:
        raise DomainError(f"coefficient must be >= 0, got {coefficient}")
    kpi_sq = (mode * math.pi) ** 2
    return kpi_sq ** 2 + coefficient * kpi_sq


@dataclass(frozen=True)
class EigenSolution:
    """Unique positive solution of the eigenproblem at a given lam.

    ``energy`` is the stretch integral int (u')^2, ``amplitude`` the
    coefficient of sin(pi*x); ``mode`` is always 1 for positive solutions.
    """

    lam: float
    a: float
    b: float
    energy: float
    amplitude: float
    u: GridFunction
    mode: int = 1


def solve_eigenproblem(params: ProblemParams, grid: Grid | None = None) -> EigenSolution:
    """Return the positive solution for lam above the existence threshold.

    Raises :class:`ParameterDegenerate` for b = 0 (the problem is then linear
    and any amplitude works at the single admissible lam) and
    :class:`NoPositiveSolution` for lam at or below pi^4 + a*pi^2.
    """
    if params.b == 0.0:
        raise ParameterDegenerate(
            "b = 0: amplitude is undetermined, no unique positive solution")
    threshold = principal_eigenvalue(params.a)
    if params.lam <= threshold:
        raise NoPositiveSolution(
            f"lambda = {params.lam} is not above the existence threshold "
            f"{threshold:.6f}", lam=params.lam, threshold=threshold)
    grid = grid if grid is not None else Grid(257)
    energy = (params.lam - PI4 - params.a * PI2) / (params.b * PI2)
    amplitude = math.sqrt(2.0 * energy) / math.pi
    u = GridFunction(grid, amplitude * _pinned_sine(grid))
    return EigenSolution(lam=params.lam, a=params.a, b=params.b,
                         energy=energy, amplitude=amplitude, u=u)


def _pinned_sine(grid: Grid) -> np.ndarray:
    # sin(pi * 1.0) rounds to ~1e-16; pin the ends so u(0) = u(1) = 0 holds
    # exactly in the sampled function.
    vals = np.sin(math.pi * grid.nodes)
    vals[0] = 0.0
    vals[-1] = 0.0
    return vals


def curvature_of(sol: EigenSolution) -> GridFunction:
    """Negated curvature -u'' = amplitude * pi^2 * sin(pi*x) of the closed form."""
    return GridFunction(sol.u.grid, sol.amplitude * PI2 * _pinned_sine(sol.u.grid))


def cross_validate(sol: EigenSolution, tol: float,
                   solver_tol: float = 1e-10) -> float:
    """Feed lam * u back through the nonlocal solver and compare solutions.

    The eigen solution solves the nonlocal problem with the frozen load
    g = lam * u, so the two paths must agree; returns the sup-norm distance
    and raises :class:`ConvergenceFailure` if it exceeds ``tol``.
    """
    if sol.b <= 0.0:
        raise ParameterDegenerate("b = 0 solution cannot be cross-validated")
    params = ProblemParams(a=sol.a, b=sol.b, lam=sol.lam)
    g = GridFunction(sol.u.grid, sol.lam * sol.u.values)
    report = nonlocal_solver.solve(g, params, tol=solver_tol)
    distance = sup_norm(GridFunction(sol.u.grid, report.u.values - sol.u.values))
    if distance > tol:
        raise ConvergenceFailure(
            f"eigen/nonlocal cross-check distance {distance:.3e} exceeds "
            f"tol {tol:.3e}", last_iterate=report.u)
    return distance
