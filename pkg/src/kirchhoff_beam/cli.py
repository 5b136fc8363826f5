"""Command-line front end: solve commands, branch sweeps, and report verification.

Exit codes: 0 converged, 2 theory-forbidden input (no positive solution or
degenerate parameters), 3 convergence or verification failure, 4 invalid
configuration.  Every run echoes its parsed configuration verbatim into the
JSON report; identical configurations produce byte-identical reports apart
from the timing field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import continuation, nonlocal_solver, sublinear
from .eigen import curvature_of, principal_eigenvalue, solve_eigenproblem
from .errors import (ConfigurationError, ConvergenceFailure, DomainError,
                     InvalidInputError, KirchhoffError, NoPositiveSolution,
                     ParameterDegenerate)
from .linear_core import ProblemParams, residual, solve_linearized, stiffness
from .numerics import Grid, GridFunction, integrate, sup_norm

EXIT_OK = 0
EXIT_FORBIDDEN = 2
EXIT_NO_CONVERGENCE = 3
EXIT_INVALID = 4

RHS_NAMES = ("sin-pi", "const", "neg-sin-pi", "zero")

SOLVE_COMMANDS = ("solve-linear", "solve-nonlocal", "solve-eigen", "solve-sublinear")


def builtin_rhs(name: str, grid: Grid) -> GridFunction:
    x = grid.nodes
    table = {
        "sin-pi": np.sin(np.pi * x),
        "const": np.ones_like(x),
        "neg-sin-pi": -np.sin(np.pi * x),
        "zero": np.zeros_like(x),
    }
    try:
        return GridFunction(grid, table[name])
    except KeyError:
        raise ConfigurationError(f"unknown right-hand side {name!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kirchhoff-beam",
        description="Solvers for the nonlocal fourth-order Kirchhoff beam "
                    "problem on (0, 1) with pinned, moment-free ends.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=1.0, help="constant a > 0")
    common.add_argument("--b", type=float, default=1.0, help="constant b >= 0")
    common.add_argument("--lambda", dest="lam", type=float, default=0.0,
                        help="load parameter lambda")
    common.add_argument("--n", type=int, default=257,
                        help="grid node count (odd, >= 33)")
    common.add_argument("--tol-r", type=float, default=None,
                        help="fixed-point tolerance for the stretch integral")
    common.add_argument("--output", "-o", type=str, default=None,
                        help="JSON report path (default <command>.json)")
    common.add_argument("--csv", type=str, default=None,
                        help="CSV path (default next to the JSON report)")
    common.add_argument("--no-plot", dest="plot", action="store_false",
                        help="skip rendering the report figure")

    rhs = argparse.ArgumentParser(add_help=False)
    rhs.add_argument("--g", choices=RHS_NAMES, default="sin-pi",
                     help="named built-in right-hand side")

    nonlin = argparse.ArgumentParser(add_help=False)
    nonlin.add_argument("--c1", type=float, default=1.0)
    nonlin.add_argument("--p", type=float, default=0.5)
    nonlin.add_argument("--c2", type=float, default=0.0)
    nonlin.add_argument("--q", type=float, default=0.5)

    p = sub.add_parser("solve-linear", parents=[common, rhs],
                       help="solve the frozen-coefficient linear problem")
    p.add_argument("--R", type=float, default=0.0,
                   help="frozen stretch integral value E >= 0")

    sub.add_parser("solve-nonlocal", parents=[common, rhs],
                   help="solve the nonlocal problem with a fixed load g")
    sub.add_parser("solve-eigen", parents=[common],
                   help="closed-form positive solution of the eigenproblem")
    sub.add_parser("solve-sublinear", parents=[common, nonlin],
                   help="positive solution for the sublinear power-sum load")

    p = sub.add_parser("sweep", parents=[common, nonlin],
                       help="trace a positive-solution branch over lambda")
    p.add_argument("--branch", choices=("eigen", "sublinear"), required=True)
    p.add_argument("--lambda-grid", type=str, default=None,
                   help="comma-separated lambda values")
    p.add_argument("--lambda-min", type=float, default=None)
    p.add_argument("--lambda-max", type=float, default=None)
    p.add_argument("--points", type=int, default=13)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")

    p = sub.add_parser("verify", help="re-check every invariant of a solve report")
    p.add_argument("report", type=str, help="JSON report produced by a solve command")
    return parser


def _config_echo(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items())}
    return cfg


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_solution_csv(path: Path, x, u, w) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["x,u,w"]
    lines += [f"{_fmt(xi)},{_fmt(ui)},{_fmt(wi)}" for xi, ui, wi in zip(x, u, w)]
    path.write_text("\n".join(lines) + "\n")


def _write_sweep_csv(path: Path, samples) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["lambda,sup_norm,R,iterations,status"]
    lines += [f"{_fmt(s.lam)},{_fmt(s.sup_norm)},{_fmt(s.energy)},"
              f"{s.iterations},{s.status}" for s in samples]
    path.write_text("\n".join(lines) + "\n")


def _default_tol(command: str) -> float:
    return 1e-8 if command in ("solve-sublinear", "sweep") else 1e-10


def _result_skeleton(status: str) -> dict:
    return {"R": None, "sup_norm": None, "iterations": 0,
            "residual": None, "status": status}


def _run_solve(args: argparse.Namespace):
    """Dispatch one solve command; returns (result dict, x, u, w)."""
    grid = Grid(args.n)
    tol = args.tol_r if args.tol_r is not None else _default_tol(args.command)
    params = ProblemParams(a=args.a, b=args.b, lam=args.lam)

    if args.command == "solve-linear":
        g = builtin_rhs(args.g, grid)
        sol = solve_linearized(g, params, args.R)
        res = residual(sol.u, g, params, args.R)
        result = {
            "R": args.R,
            "sup_norm": sup_norm(sol.u),
            "iterations": 0,
            "residual": res,
            "status": "converged",
            "energy": sol.energy,
            "cone_flag": nonlocal_solver.cone_flag(g),
        }
        return result, grid.nodes, sol.u.values, sol.w.values

    if args.command == "solve-nonlocal":
        g = builtin_rhs(args.g, grid)
        report = nonlocal_solver.solve(g, params, tol=tol)
        result = {
            "R": report.energy,
            "sup_norm": sup_norm(report.u),
            "iterations": report.iterations,
            "residual": report.residual,
            "status": "converged",
            "energy": float(grid.weights @ (report.u.values * report.w.values)),
            "bracket": list(report.bracket),
            "cone_flag": report.cone_flag,
            "warning": report.warning,
            "tol_r": tol,
        }
        return result, grid.nodes, report.u.values, report.w.values

    if args.command == "solve-eigen":
        sol = solve_eigenproblem(params, grid)
        w = curvature_of(sol)
        g = GridFunction(grid, params.lam * sol.u.values)
        result = {
            "R": sol.energy,
            "sup_norm": sup_norm(sol.u),
            "iterations": 0,
            "residual": residual(sol.u, g, params, sol.energy),
            "status": "converged",
            "energy": integrate(GridFunction(grid, sol.u.values * w.values)),
            "amplitude": sol.amplitude,
            "lambda_threshold": principal_eigenvalue(params.a),
            "mode": sol.mode,
        }
        return result, grid.nodes, sol.u.values, w.values

    if args.command == "solve-sublinear":
        spec = sublinear.NonlinearitySpec(c1=args.c1, p=args.p, c2=args.c2, q=args.q)
        report = sublinear.solve(params, spec, tol=tol, grid=grid)
        result = {
            "R": report.energy,
            "sup_norm": sup_norm(report.u),
            "iterations": report.outer_iterations,
            "residual": report.residual,
            "status": report.status,
            "energy": float(grid.weights @ (report.u.values * report.w.values)),
            "inner_iterations": list(report.inner_iterations),
            "tol_r": tol,
        }
        return result, grid.nodes, report.u.values, report.w.values

    raise ConfigurationError(f"unknown command {args.command}")


def _run_sweep(args: argparse.Namespace):
    grid = Grid(args.n)
    lam_grid = _lambda_grid(args)
    tol = args.tol_r if args.tol_r is not None else _default_tol(args.command)
    if args.branch == "eigen":
        samples = continuation.sweep_eigen(args.a, args.b, lam_grid, grid)
    else:
        spec = sublinear.NonlinearitySpec(c1=args.c1, p=args.p, c2=args.c2, q=args.q)
        samples = continuation.sweep_sublinear(args.a, args.b, spec, lam_grid,
                                               grid, tol=tol)
    return samples


def _lambda_grid(args: argparse.Namespace) -> list[float]:
    if args.lambda_grid:
        try:
            return [float(v) for v in args.lambda_grid.split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigurationError(f"bad --lambda-grid: {exc}") from None
    if args.lambda_min is None or args.lambda_max is None:
        raise ConfigurationError("sweep needs --lambda-grid or --lambda-min/--lambda-max")
    if args.points < 1:
        raise ConfigurationError("--points must be >= 1")
    if args.spacing == "log":
        if args.lambda_min <= 0:
            raise ConfigurationError("log spacing needs positive --lambda-min")
        return list(np.geomspace(args.lambda_min, args.lambda_max, args.points))
    return list(np.linspace(args.lambda_min, args.lambda_max, args.points))


def run(args: argparse.Namespace) -> int:
    out_path = Path(args.output) if args.output else Path(f"{args.command}.json")
    csv_path = Path(args.csv) if args.csv else out_path.with_suffix(".csv")
    fig_path = out_path.with_suffix(".png") if args.plot else None
    config = _config_echo(args)
    started = time.perf_counter()
    payload = {"config": config, "result": None, "solution_csv_path": None,
               "figure_path": None, "timing_ms": None}

    try:
        if args.command == "sweep":
            samples = _run_sweep(args)
            _write_sweep_csv(csv_path, samples)
            n_conv = sum(1 for s in samples if s.status == continuation.STATUS_CONVERGED)
            n_failed = sum(1 for s in samples if s.status == continuation.STATUS_FAILED)
            result = _result_skeleton("converged" if n_failed == 0 else "convergence_failure")
            result.update({"samples": len(samples), "converged": n_conv,
                           "no_solution": len(samples) - n_conv - n_failed,
                           "failed": n_failed})
            payload["result"] = result
            payload["solution_csv_path"] = str(csv_path)
            if fig_path is not None:
                from .plots import save_sweep_figure
                payload["figure_path"] = save_sweep_figure(
                    str(fig_path), samples, f"{args.branch} branch",
                    log_axes=args.branch == "sublinear")
            code = EXIT_OK if n_failed == 0 else EXIT_NO_CONVERGENCE
        else:
            result, x, u, w = _run_solve(args)
            _write_solution_csv(csv_path, x, u, w)
            payload["result"] = result
            payload["solution_csv_path"] = str(csv_path)
            if fig_path is not None:
                from .plots import save_solution_figure
                payload["figure_path"] = save_solution_figure(
                    str(fig_path), x, u, w, args.command)
            code = EXIT_OK
    except (NoPositiveSolution, ParameterDegenerate) as exc:
        result = _result_skeleton(
            "no_positive_solution" if isinstance(exc, NoPositiveSolution)
            else "parameter_degenerate")
        result["reason"] = str(exc)
        payload["result"] = result
        code = EXIT_FORBIDDEN
    except ConvergenceFailure as exc:
        result = _result_skeleton("convergence_failure")
        result["reason"] = str(exc)
        payload["result"] = result
        code = EXIT_NO_CONVERGENCE

    payload["timing_ms"] = round(1e3 * (time.perf_counter() - started), 3)
    _write_json(out_path, payload)
    print(f"{args.command}: status={payload['result']['status']} "
          f"report={out_path}")
    return code


# ---------------------------------------------------------------------------
# verify

def _load_report(path: Path):
    try:
        payload = json.loads(path.read_text())
        config = payload["config"]
        result = payload["result"]
        csv_path = payload["solution_csv_path"]
        command = config["command"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed report file {path}: {exc}") from None
    if command not in SOLVE_COMMANDS:
        raise InvalidInputError(f"verify expects a solve report, got {command!r}")
    if csv_path is None:
        raise InvalidInputError("report has no solution CSV to verify")
    try:
        data = np.loadtxt(csv_path, delimiter=",", skiprows=1)
        x, u, w = data[:, 0], data[:, 1], data[:, 2]
    except (OSError, ValueError, IndexError) as exc:
        raise InvalidInputError(f"malformed solution CSV {csv_path}: {exc}") from None
    return config, result, x, u, w


def _reconstruct_rhs(config: dict, result: dict, grid: Grid,
                     u: np.ndarray) -> GridFunction:
    command = config["command"]
    if command in ("solve-linear", "solve-nonlocal"):
        return builtin_rhs(config["g"], grid)
    if command == "solve-eigen":
        return GridFunction(grid, config["lam"] * u)
    spec = sublinear.NonlinearitySpec(c1=config["c1"], p=config["p"],
                                      c2=config["c2"], q=config["q"])
    return GridFunction(grid, config["lam"] * spec.evaluate(u))


def verify(path: Path) -> int:
    config, result, x, u_vals, w_vals = _load_report(path)
    grid = Grid(int(config["n"]))
    if not np.allclose(x, grid.nodes, atol=1e-12):
        raise InvalidInputError("CSV nodes do not match the configured grid")
    params = ProblemParams(a=config["a"], b=config["b"], lam=config["lam"])
    u = GridFunction(grid, u_vals)
    w = GridFunction(grid, w_vals)
    g = _reconstruct_rhs(config, result, grid, u_vals)
    command = config["command"]
    energy_ref = result["R"] if command != "solve-linear" else config["R"]
    m = stiffness(params, energy_ref)
    wts = grid.weights

    checks: list[tuple[str, float, float]] = []  # name, measured, bound

    checks.append(("finite_values",
                   0.0 if np.all(np.isfinite(u_vals)) and np.all(np.isfinite(w_vals))
                   else np.inf, 0.5))
    checks.append(("boundary_values",
                   max(abs(u_vals[0]), abs(u_vals[-1]), abs(w_vals[0]),
                       abs(w_vals[-1])), 1e-14))

    res = residual(u, g, params, energy_ref)
    checks.append(("residual", res, 5e-2 * (1.0 + sup_norm(g))))

    energy = float(wts @ (u_vals * w_vals))
    identity = (float(wts @ (g.values * u_vals)) - float(wts @ (w_vals ** 2))) / m
    if command == "solve-eigen":
        checks.append(("energy_equals_stretch", abs(energy - result["R"]), 1e-8))
    else:
        checks.append(("energy_identity", abs(energy - identity),
                       1e-8 * (1.0 + sup_norm(g) ** 2)))

    if command in ("solve-nonlocal", "solve-sublinear"):
        tol = result.get("tol_r") or _default_tol(command)
        checks.append(("fixed_point_consistency", abs(result["R"] - energy),
                       10.0 * tol))

    flag = result.get("cone_flag")
    if command in ("solve-eigen", "solve-sublinear") or flag == "nonneg":
        checks.append(("sign_structure",
                       max(0.0, float(-min(u_vals.min(), w_vals.min()))), 1e-14))
    elif flag == "nonpos":
        checks.append(("sign_structure",
                       max(0.0, float(max(u_vals.max(), w_vals.max()))), 1e-14))

    checks.append(("sup_norm_matches_report",
                   abs(float(np.max(np.abs(u_vals))) - result["sup_norm"]), 1e-12))

    all_ok = True
    for name, measured, bound in checks:
        ok = measured <= bound
        all_ok &= ok
        slack = bound - measured
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: measured={measured:.3e} "
              f"bound={bound:.3e} slack={slack:.3e}")
    print(f"verify: {'all checks passed' if all_ok else 'CHECKS FAILED'}")
    return EXIT_OK if all_ok else EXIT_NO_CONVERGENCE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors; remap the latter.
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        if args.command == "verify":
            return verify(Path(args.report))
        return run(args)
    except (ConfigurationError, InvalidInputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KirchhoffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
