"""Figure rendering for the report path.

Every function writes one PNG next to the delimited output it mirrors:
the speedup-by-query ranking, the three speedup-predictor scatters, and
the cumulative gap distribution with its detected elbow.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import SpeedupRow
from .danalysis import DeltaDistribution


def plot_speedup(rows: list[SpeedupRow], path: str) -> str:
    """Speedup per query, ranked from largest to smallest, one line per d."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_d: dict[float, list[SpeedupRow]] = {}
    for row in rows:
        by_d.setdefault(row.d, []).append(row)
    for d in sorted(by_d):
        series = sorted(by_d[d], key=lambda r: -r.speedup)
        ax.plot(
            range(1, len(series) + 1),
            [r.speedup for r in series],
            marker="o",
            markersize=3,
            label=f"d={int(d) if d != float('inf') else 'inf'}",
        )
    ax.axhline(1.0, color="grey", linewidth=0.8, linestyle="--")
    ax.set_xlabel("query rank (decreasing speedup)")
    ax.set_ylabel("speedup (topology-first / combined)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_predictors(rows: list[dict[str, object]], path: str) -> str:
    """Scatter panels: speedup against spurious count, diameter and size."""
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.8), sharey=True)
    speedup = [float(r["speedup"]) for r in rows]
    panels = [
        ("spurious", "spurious candidates", True),
        ("diameter", "query diameter", False),
        ("total_size", "query order + size", False),
    ]
    for ax, (key, label, logx) in zip(axes, panels):
        xs = [float(r[key]) for r in rows]
        if logx:
            shifted = [x if x > 0 else 0.5 for x in xs]  # log axis: 0 plots at 0.5
            ax.set_xscale("log")
            ax.scatter(shifted, speedup, s=14, alpha=0.7)
        else:
            ax.scatter(xs, speedup, s=14, alpha=0.7)
        ax.set_xlabel(label)
    axes[0].set_ylabel("speedup")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_d_distribution(
    dist: DeltaDistribution, path: str, elbow: int | None = None
) -> str:
    """Cumulative adjacent-gap curve, with the detected elbow marked."""
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [t for t, _ in dist.cumulative]
    ys = [c for _, c in dist.cumulative]
    ax.step(xs, ys, where="post")
    if elbow is not None:
        ax.axvline(elbow, color="firebrick", linestyle="--", linewidth=1.0,
                   label=f"elbow = {elbow}")
        ax.legend(fontsize=8)
    ax.set_xlabel("gap between adjacent interactions (s)")
    ax.set_ylabel("cumulative pair count")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
