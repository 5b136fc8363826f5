"""Regenerate sublinear_golden.json (development tool, not run by the suite).

Reference values come from a mesh-refinement oracle: solve on n = 513 and
n = 1025 with tight tolerances, estimate the observed convergence order from
the n = 257/513/1025 differences, and Richardson-extrapolate the two finest
levels.  Two independent inner starts must agree before a value is accepted.

Run from the repository root:  python3 tests/data/generate_goldens.py
"""

import json
import math
from pathlib import Path

import numpy as np

from kirchhoff_beam import (Grid, GridFunction, NonlinearitySpec, ProblemParams,
                            inner_solve, solve_sublinear, sup_norm)


def richardson(values: dict[int, float]) -> tuple[float, float]:
    ns = sorted(values)
    d1 = values[ns[0]] - values[ns[1]]
    d2 = values[ns[1]] - values[ns[2]]
    order = math.log2(abs(d1) / abs(d2))
    extrap = values[ns[2]] + (values[ns[2]] - values[ns[1]]) / (2 ** order - 1)
    return extrap, order


def main() -> None:
    spec = NonlinearitySpec(c1=1.0, p=0.5)

    inner_params = ProblemParams(a=1.0, b=0.0, lam=1.0)
    inner_sup = {}
    for n in (257, 513, 1025):
        grid = Grid(n)
        u = inner_solve(inner_params, spec, 0.0, tol=1e-12, grid=grid)
        u_alt = inner_solve(inner_params, spec, 0.0, tol=1e-12, grid=grid,
                            start=GridFunction(grid, 10.0 * np.ones(n)))
        agree = float(np.max(np.abs(u.values - u_alt.values)))
        assert agree <= 1e-8, f"inner starts disagree at n={n}: {agree}"
        inner_sup[n] = sup_norm(u)
    inner_extrap, inner_order = richardson(inner_sup)

    outer_params = ProblemParams(a=1.0, b=1.0, lam=1.0)
    outer_R, outer_sup = {}, {}
    for n in (257, 513, 1025):
        grid = Grid(n)
        rep = solve_sublinear(outer_params, spec, tol=1e-14, inner_tol=1e-13,
                              grid=grid)
        outer_R[n] = rep.energy
        outer_sup[n] = sup_norm(rep.u)
    r_extrap, r_order = richardson(outer_R)
    s_extrap, s_order = richardson(outer_sup)

    payload = {
        "inner_b0_lam1_sqrt": {
            "a": 1.0, "b": 0.0, "lam": 1.0, "c1": 1.0, "p": 0.5,
            "sup_norm": inner_extrap,
            "observed_order": inner_order,
            "tol_at_257": 5e-10,
        },
        "outer_b1_lam1_sqrt": {
            "a": 1.0, "b": 1.0, "lam": 1.0, "c1": 1.0, "p": 0.5,
            "R": r_extrap,
            "sup_norm": s_extrap,
            "observed_order_R": r_order,
            "observed_order_sup": s_order,
            "tol_R_at_257": 2e-12,
            "tol_sup_at_257": 5e-10,
        },
    }
    out = Path(__file__).with_name("sublinear_golden.json")
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(json.dumps(payload, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
