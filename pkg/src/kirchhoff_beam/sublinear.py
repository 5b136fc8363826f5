"""Solver for sublinear loads lam * (c1*u^p + c2*u^q), 0 < p, q < 1.

Two nested loops.  Inner: at a frozen stretch integral E the solution
operator H(v) = deflection(lam * f(v^+)) is increasing and alpha-concave
with alpha = max(p, q), so successive substitution from any cone start
converges to its unique fixed point.  Outer: scalar bisection matches the
frozen E to the stretch integral of the inner solution, mirroring the
nonlocal solver's bracket-and-bisect scheme.

f is always evaluated through the positive part, so intermediate iterates
need not stay in the cone for the iteration to remain well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (ConfigurationError, ConvergenceFailure, NoPositiveSolution)
from .kernels import assemble_operators
from .linear_core import ProblemParams, residual, stiffness
from .numerics import Grid, GridFunction

CONCAVITY_SLACK = 1e-12
MAX_DOUBLINGS = 60
MAX_BISECTIONS = 60


@dataclass(frozen=True)
class NonlinearitySpec:
    """Power-sum load f(s) = c1*s^p + c2*s^q with concavity exponent alpha.

    Exponents up to 1 are representable (p = 1, c2 = 0 gives the identity
    map) but only genuinely sublinear specs pass the concavity screen that
    gates the solver.
    """

    c1: float
    p: float
    c2: float = 0.0
    q: float = 0.5
    alpha: float | None = None

    def __post_init__(self):
        if self.c1 < 0.0 or self.c2 < 0.0:
            raise ConfigurationError("coefficients c1, c2 must be nonnegative")
        if self.c1 == 0.0 and self.c2 == 0.0:
            raise ConfigurationError("c1 and c2 cannot both vanish")
        for name, expo in (("p", self.p), ("q", self.q)):
            if not 0.0 < expo <= 1.0:
                raise ConfigurationError(f"exponent {name} must lie in (0, 1], got {expo}")
        alpha = self.alpha if self.alpha is not None else max(self.p, self.q)
        if not 0.0 < alpha < 1.0:
            raise ConfigurationError(f"alpha must lie in (0, 1), got {alpha}")
        object.__setattr__(self, "alpha", float(alpha))

    def evaluate(self, s):
        """f at the positive part of s; accepts scalars or arrays."""
        sp = np.maximum(s, 0.0)
        out = self.c1 * sp ** self.p + self.c2 * sp ** self.q
        return float(out) if np.isscalar(s) else out


def check_alpha_concavity(spec: NonlinearitySpec, samples: int = 64) -> bool:
    """Screen f(tau*s) >= tau^alpha * f(s) and monotonicity on a fixed lattice.

    The lattice covers tau in (0, 1) and s in (0, 1e3]; deterministic, so a
    passing spec always passes.
    """
    taus = np.linspace(1.0 / (samples + 1), samples / (samples + 1.0), samples)
    svals = np.geomspace(1e-6, 1e3, samples)
    fs = spec.evaluate(svals)
    if not np.all(np.diff(fs) >= -CONCAVITY_SLACK):
        return False
    scaled = spec.evaluate(taus[:, None] * svals[None, :])
    floor = taus[:, None] ** spec.alpha * fs[None, :]
    return bool(np.all(scaled >= floor - CONCAVITY_SLACK))


@dataclass(frozen=True)
class SublinearReport:
    """Positive solution with iteration diagnostics.

    ``energy`` is the converged stretch integral; ``inner_iterations`` lists
    the substitution count of every inner solve the outer loop ran.
    """

    u: GridFunction
    w: GridFunction
    energy: float
    inner_iterations: tuple[int, ...]
    outer_iterations: int
    residual: float
    status: str


def _iterate(params: ProblemParams, spec: NonlinearitySpec, energy: float,
             tol: float, max_iter: int, grid: Grid, start: np.ndarray | None):
    ops = assemble_operators(stiffness(params, energy), grid)
    lam = params.lam
    if lam == 0.0:
        zero = np.zeros(grid.n)
        return zero, zero, 1

    def apply_h(vals):
        return ops.deflection.apply(lam * spec.evaluate(vals))

    v = apply_h(np.ones(grid.n)) if start is None else np.asarray(start, dtype=float)
    for k in range(1, max_iter + 1):
        v_next = apply_h(v)
        if float(np.max(np.abs(v_next - v))) <= tol:
            w = ops.curvature.apply(lam * spec.evaluate(v_next))
            return v_next, w, k
        v = v_next
    raise ConvergenceFailure(
        f"inner iteration did not meet tol {tol:.1e} within {max_iter} steps",
        last_iterate=GridFunction(grid, v))


def inner_solve(params: ProblemParams, spec: NonlinearitySpec, energy: float,
                tol: float = 1e-10, max_iter: int = 10_000,
                grid: Grid | None = None,
                start: GridFunction | None = None) -> GridFunction:
    """Unique fixed point of H at a frozen stretch integral ``energy``.

    The default start is H applied to the constant-one function; any cone
    start converges to the same limit.  lam must be nonnegative (lam = 0
    returns the zero function in one step).
    """
    if params.lam < 0.0:
        raise ConfigurationError("inner iteration requires lambda >= 0")
    grid = grid if grid is not None else (start.grid if start is not None else Grid(257))
    start_vals = None if start is None else start.values
    v, _, _ = _iterate(params, spec, energy, tol, max_iter, grid, start_vals)
    return GridFunction(grid, v)


def solve(params: ProblemParams, spec: NonlinearitySpec, tol: float = 1e-8,
          grid: Grid | None = None, bracket_hint: float = 1.0,
          inner_tol: float | None = None, max_inner: int = 10_000) -> SublinearReport:
    """Positive solution of the sublinear problem for lam > 0.

    Raises :class:`NoPositiveSolution` for lam < 0; lam = 0 returns the
    trivial zero solution flagged as such.  On success the converged
    ``energy`` satisfies |E - int(u')^2| <= tol and u is strictly positive
    at interior nodes.
    """
    if not check_alpha_concavity(spec):
        raise ConfigurationError(
            "nonlinearity fails the monotone alpha-concavity screen; "
            "the inner iteration's uniqueness guarantee would not apply")
    grid = grid if grid is not None else Grid(257)
    if params.lam < 0.0:
        raise NoPositiveSolution(
            f"lambda = {params.lam} < 0 admits no positive solution",
            lam=params.lam, threshold=0.0)
    if params.lam == 0.0:
        zero = GridFunction.zeros(grid)
        return SublinearReport(u=zero, w=zero, energy=0.0, inner_iterations=(),
                               outer_iterations=0, residual=0.0, status="trivial")

    itol = inner_tol if inner_tol is not None else min(1e-10, tol * 1e-2)
    inner_counts: list[int] = []
    outer = 0

    def psi(e: float):
        nonlocal outer
        outer += 1
        v, w, k = _iterate(params, spec, e, itol, max_inner, grid, None)
        inner_counts.append(k)
        return e - float(grid.weights @ (v * w)), v, w

    lo = 0.0
    hi = max(bracket_hint, 1e-30)
    val_hi, _, _ = psi(hi)
    for _ in range(MAX_DOUBLINGS):
        if val_hi > 0.0:
            break
        hi *= 2.0
        val_hi, _, _ = psi(hi)
    else:
        raise ConvergenceFailure(
            f"no upper bracket for the outer fixed point below E = {hi}")

    best = None
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        val, v, w = psi(mid)
        if best is None or abs(val) < abs(best[0]):
            best = (val, mid, v, w)
        if abs(val) <= 0.5 * tol:
            break
        if val > 0.0:
            hi = mid
        else:
            lo = mid
    val, root, v, w = best
    if abs(val) > tol:
        raise ConvergenceFailure(
            f"outer bisection stalled: |E - energy| = {abs(val):.3e} > {tol:.3e}",
            last_iterate=GridFunction(grid, v))

    u = GridFunction(grid, v)
    load = GridFunction(grid, params.lam * spec.evaluate(v))
    res = residual(u, load, params, root)
    return SublinearReport(u=u, w=GridFunction(grid, w), energy=root,
                           inner_iterations=tuple(inner_counts),
                           outer_iterations=outer, residual=res,
                           status="converged")
