"""Branch sweeps in lambda for bifurcation-diagram data.

Both positive-solution branches are single-valued in lambda (the eigen
branch in closed form, the sublinear branch by uniqueness), so each sample
is an independent solve; no arclength continuation is needed.  Samples are
computed in order and per-sample failures are recorded in the row status
rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConvergenceFailure, NoPositiveSolution, ParameterDegenerate
from .eigen import solve_eigenproblem
from .linear_core import ProblemParams
from .numerics import Grid, sup_norm
from . import sublinear

STATUS_CONVERGED = "converged"
STATUS_NO_SOLUTION = "no_solution"
STATUS_FAILED = "failed"


@dataclass(frozen=True)
class BranchSample:
    """One diagram row: lambda, sup norm, stretch integral, iterations, status."""

    lam: float
    sup_norm: float
    energy: float
    iterations: int
    status: str


def _no_solution(lam: float) -> BranchSample:
    nan = float("nan")
    return BranchSample(lam=lam, sup_norm=nan, energy=nan, iterations=0,
                        status=STATUS_NO_SOLUTION)


def sweep_eigen(a: float, b: float, lam_grid, grid: Grid | None = None) -> list[BranchSample]:
    """Closed-form eigen branch over lam_grid; requires b > 0."""
    if b <= 0.0:
        raise ParameterDegenerate("eigen sweep requires b > 0")
    grid = grid if grid is not None else Grid(257)
    samples = []
    for lam in lam_grid:
        try:
            sol = solve_eigenproblem(ProblemParams(a=a, b=b, lam=lam), grid)
        except NoPositiveSolution:
            samples.append(_no_solution(lam))
        except ConvergenceFailure:
            samples.append(BranchSample(lam=lam, sup_norm=float("nan"),
                                        energy=float("nan"), iterations=0,
                                        status=STATUS_FAILED))
        else:
            samples.append(BranchSample(lam=lam, sup_norm=sup_norm(sol.u),
                                        energy=sol.energy, iterations=0,
                                        status=STATUS_CONVERGED))
    return samples


def sweep_sublinear(a: float, b: float, spec: sublinear.NonlinearitySpec,
                    lam_grid, grid: Grid | None = None,
                    tol: float = 1e-8) -> list[BranchSample]:
    """Sublinear branch over lam_grid; lam < 0 rows are no_solution, lam = 0
    converges to the trivial zero."""
    grid = grid if grid is not None else Grid(257)
    samples = []
    for lam in lam_grid:
        if lam < 0.0:
            samples.append(_no_solution(lam))
            continue
        params = ProblemParams(a=a, b=b, lam=lam)
        try:
            report = sublinear.solve(params, spec, tol=tol, grid=grid)
        except ConvergenceFailure:
            samples.append(BranchSample(lam=lam, sup_norm=float("nan"),
                                        energy=float("nan"), iterations=0,
                                        status=STATUS_FAILED))
        else:
            samples.append(BranchSample(lam=lam, sup_norm=sup_norm(report.u),
                                        energy=report.energy,
                                        iterations=report.outer_iterations,
                                        status=STATUS_CONVERGED))
    return samples
