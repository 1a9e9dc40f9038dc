"""Render a sweep as a rate-memory figure next to the CSV."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import SweepConfig, SweepRow

CURVE_STYLES = {
    "new": ("New scheme", "tab:blue", "-"),
    "sota": ("State of the art", "tab:orange", "--"),
    "stc": ("Shared-link bound", "tab:green", "-."),
    "cutset": ("Cut-set bound", "tab:red", ":"),
}


def render_figure(rows: list[SweepRow], config: SweepConfig, path: Path) -> Path:
    """Plot every selected curve over the sweep grid, mark the labeled
    vertices, and save the figure."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    grid = [r for r in rows if r.label == ""]
    for curve in config.curves:
        label, color, style = CURVE_STYLES[curve]
        xs = [float(r.memory) for r in grid if r.values[curve] is not None]
        ys = [float(r.values[curve]) for r in grid if r.values[curve] is not None]
        ax.plot(xs, ys, style, color=color, label=label)

    for row in rows:
        if not row.label:
            continue
        for curve in ("new", "sota"):
            if curve in row.values and row.values[curve] is not None:
                ax.plot(
                    [float(row.memory)],
                    [float(row.values[curve])],
                    "o",
                    markersize=3,
                    color="black",
                )
                break

    ax.set_xlabel("Cache size M (files)")
    ax.set_ylabel("Delivery rate R (files)")
    ax.set_title(
        f"Rate-memory tradeoff, N={config.num_files} files, K={config.num_users} users"
    )
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
