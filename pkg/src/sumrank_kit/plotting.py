"""Failure-rate figures written next to the simulation CSV."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _x(job, rows):
    if job.family in ("ilrs", "isrs"):
        return [r.point["t"] for r in rows], "sum-rank weight t"
    return [r.point["gamma"] for r in rows], "insertions gamma"


def plot_rows(job, rows, path, dpi: int = 150) -> None:
    """Observed failure rate against the analytic and heuristic bounds, log scale."""
    xs, label = _x(job, rows)
    rate = np.array([r.rate for r in rows], dtype=float)
    fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=dpi)
    ax.semilogy(xs, [r.bound for r in rows], "k-", lw=1.2, label="upper bound")
    ax.semilogy(xs, [r.heuristic_bound for r in rows], "k--", lw=1.0, label="heuristic bound")
    seen = rate > 0
    if seen.any():
        ax.semilogy(np.asarray(xs)[seen], rate[seen], "o", color="tab:red", label="observed")
    for x, r in zip(xs, rows):
        if r.rate == 0:
            ax.annotate(f"0/{r.trials}", (x, r.bound), textcoords="offset points",
                        xytext=(0, -14), ha="center", fontsize=7)
    ax.set_xlabel(label)
    ax.set_ylabel("failure rate")
    ax.set_xticks(xs)
    ax.set_title(f"{job.family} / {job.decoder}", fontsize=10)
    ax.grid(ls=":", lw=0.6)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
