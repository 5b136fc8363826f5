"""Scalar fixed-point solve of the nonlocal beam problem with a fixed load.

For a given right-hand side g the full problem reduces to one scalar
equation: find E* with E* = Y(E), where Y(E) is the stretch integral of the
linearized solution at frozen E.  Y is continuous, Y(0) > 0 for g != 0, and
bounded, so E - Y(E) changes sign on [0, E_max] once E_max is grown large
enough; bisection then closes the bracket unconditionally.

Uniqueness of the fixed point is guaranteed only for one-signed g.  A
mixed-sign g is still solved, but the report carries a warning and the
returned root is the smallest one found by a deterministic left-to-right
probe scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, ProbeFailure
from .linear_core import ProblemParams, energy_functional, residual, solve_linearized
from .numerics import GridFunction, require_finite

MAX_DOUBLINGS = 60
MAX_BISECTIONS = 60
PROBE_POINTS = 64

MIXED_SIGN_WARNING = ("right-hand side changes sign: existence holds but "
                      "uniqueness is not guaranteed; returned the smallest "
                      "bracketed fixed point")


def cone_flag(g: GridFunction) -> str:
    """Classify g as 'nonneg', 'nonpos', or 'mixed' (zero counts as nonneg)."""
    if np.all(g.values >= 0.0):
        return "nonneg"
    if np.all(g.values <= 0.0):
        return "nonpos"
    return "mixed"


@dataclass(frozen=True)
class SolveReport:
    """Converged nonlocal solution plus diagnostics.

    ``energy`` is the fixed-point value E* = int (u')^2; ``bracket`` is the
    final enclosing interval, ``iterations`` counts linearized solves.
    """

    u: GridFunction
    w: GridFunction
    energy: float
    iterations: int
    bracket: tuple[float, float]
    residual: float
    cone_flag: str
    warning: str | None = None


def solve(g: GridFunction, params: ProblemParams, tol: float = 1e-10) -> SolveReport:
    """Find E* = Y(E*) by bracketed bisection and return the solution there.

    On success |E* - Y(E*)| <= tol.  Mixed-sign g is accepted with a warning
    on the report; non-finite g raises.
    """
    require_finite(g, "right-hand side")
    flag = cone_flag(g)
    grid = g.grid

    if not np.any(g.values):
        zero = GridFunction.zeros(grid)
        return SolveReport(u=zero, w=zero, energy=0.0, iterations=0,
                           bracket=(0.0, 0.0), residual=0.0, cone_flag=flag)

    evals = itertools.count(1)
    used = 0

    def phi(e: float) -> float:
        nonlocal used
        used = next(evals)
        return e - energy_functional(g, params, e)

    lo, phi_lo = 0.0, phi(0.0)
    hi = 1.0
    phi_hi = phi(hi)
    for _ in range(MAX_DOUBLINGS):
        if phi_hi > 0.0:
            break
        hi *= 2.0
        phi_hi = phi(hi)
    else:
        raise ConvergenceFailure(
            f"no upper bracket for the stretch fixed point below E = {hi}")

    if flag == "mixed":
        lo, hi = _leftmost_bracket(phi, hi, phi_lo, phi_hi)

    root, gap = _bisect(phi, lo, hi, tol)
    if abs(gap) > tol:
        raise ConvergenceFailure(
            f"bisection stalled: |E - Y(E)| = {abs(gap):.3e} > tol = {tol:.3e}")

    sol = solve_linearized(g, params, root)
    res = residual(sol.u, g, params, root)
    return SolveReport(u=sol.u, w=sol.w, energy=root, iterations=used,
                       bracket=(lo, hi), residual=res, cone_flag=flag,
                       warning=MIXED_SIGN_WARNING if flag == "mixed" else None)


def _leftmost_bracket(phi, hi: float, phi_zero: float, phi_hi: float):
    # Deterministic tie-break for possibly multiple fixed points: scan a
    # log-spaced probe of [0, hi] left to right for the first sign change.
    pts = np.concatenate([[0.0], np.geomspace(hi * 1e-12, hi, PROBE_POINTS - 1)])
    vals = [phi_zero]
    vals.extend(phi(p) for p in pts[1:-1])
    vals.append(phi_hi)
    for k in range(len(pts) - 1):
        if vals[k] <= 0.0 < vals[k + 1]:
            return float(pts[k]), float(pts[k + 1])
    return 0.0, hi


def _bisect(phi, lo: float, hi: float, tol: float):
    best, best_val = lo, np.inf
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        val = phi(mid)
        if abs(val) < abs(best_val):
            best, best_val = mid, val
        if abs(val) <= 0.5 * tol:
            return mid, val
        if val > 0.0:
            hi = mid
        else:
            lo = mid
    return best, best_val


def uniqueness_probe(g: GridFunction, params: ProblemParams,
                     starts, tol: float = 1e-10, max_steps: int = 10_000,
                     damping: float = 1.0) -> float:
    """Iterate E <- (1-theta) E + theta Y(E) from several starts; return the spread.

    The maximum pairwise distance between converged values stays within
    ~10*tol when g is one-signed (single fixed point).  A run that does not
    settle within ``max_steps`` raises :class:`ProbeFailure`, which is
    evidence of a bad iteration, not of non-uniqueness.
    """
    require_finite(g, "right-hand side")
    finals = []
    for start in starts:
        e = float(start)
        for _ in range(max_steps):
            e_next = (1.0 - damping) * e + damping * energy_functional(g, params, e)
            if abs(e_next - e) <= tol:
                e = e_next
                break
            e = e_next
        else:
            raise ProbeFailure(
                f"fixed-point probe from start {start} did not settle "
                f"within {max_steps} steps")
        finals.append(e)
    if len(finals) < 2:
        return 0.0
    return max(abs(x - y) for x, y in itertools.combinations(finals, 2))
