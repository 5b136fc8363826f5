"""Solvers for the nonlocal fourth-order Kirchhoff beam problem on (0, 1).

The equation is u'''' - (a + b*int_0^1 (u')^2 dx) u'' = lam * f(u) with
pinned, moment-free ends u(0) = u(1) = u''(0) = u''(1) = 0.
"""

from .continuation import BranchSample, sweep_eigen, sweep_sublinear
from .eigen import (EigenSolution, cross_validate, mode_eigenvalue,
                    principal_eigenvalue, solve_eigenproblem)
from .errors import (ConfigurationError, ConvergenceFailure, DomainError,
                     InvalidInputError, KirchhoffError, NoPositiveSolution,
                     ParameterDegenerate, ProbeFailure)
from .kernels import (KernelMatrix, KernelOperators, assemble_operators,
                      helmholtz_green, laplace_green)
from .linear_core import (LinearizedSolution, ProblemParams, apriori_constants,
                          energy_functional, residual, solve_linearized,
                          stiffness)
from .nonlocal_solver import SolveReport, cone_flag, uniqueness_probe
from .nonlocal_solver import solve as solve_nonlocal
from .numerics import (Grid, GridFunction, integrate, second_difference,
                       simpson_weights, sup_norm)
from .sublinear import (NonlinearitySpec, SublinearReport,
                        check_alpha_concavity, inner_solve)
from .sublinear import solve as solve_sublinear

__version__ = "0.1.0"
