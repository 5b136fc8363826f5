"""Figure rendering for CLI reports (written next to the CSV/JSON output)."""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_solution_figure(path: str, x, u, w, title: str) -> str:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(x, u, label="u (deflection)")
    ax.plot(x, w, "--", label="w = -u'' (curvature)")
    ax.set_xlabel("x")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def save_sweep_figure(path: str, samples, title: str, log_axes: bool = False) -> str:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    conv = [(s.lam, s.sup_norm) for s in samples if s.status == "converged"]
    missing = [s.lam for s in samples if s.status != "converged"]
    if conv:
        lams, sups = zip(*conv)
        ax.plot(lams, sups, "o-", label="positive branch")
    if missing:
        ax.plot(missing, [0.0] * len(missing), "x", color="tab:red",
                label="no solution")
    if log_axes and all(s.lam > 0 for s in samples):
        ax.set_xscale("log")
        positive = [s.sup_norm for s in samples
                    if s.status == "converged" and s.sup_norm > 0]
        if positive and max(positive) / min(positive) > 50 and not math.isinf(max(positive)):
            ax.set_yscale("log")
    ax.set_xlabel("lambda")
    ax.set_ylabel("sup |u|")
    ax.set_title(title)
    ax.grid(alpha=0.3, which="both")
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
