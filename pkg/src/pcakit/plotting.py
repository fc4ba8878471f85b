"""Matplotlib rendering for the plot-data files. Figures are a convenience
layer on top of the columnar outputs; nothing downstream depends on them."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")  # headless rendering only

import matplotlib.pyplot as plt
import numpy as np

from .io import _ensure_parent


def save_scree_figure(path, variances, ratios) -> None:
    _ensure_parent(path)
    idx = np.arange(1, len(variances) + 1)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
    ax1.plot(idx, variances, "o-")
    ax1.set_xlabel("component")
    ax1.set_ylabel("variance")
    ax1.set_xticks(idx)
    ax1.grid(alpha=0.3)
    ax2.bar(idx, ratios)
    ax2.set_xlabel("component")
    ax2.set_ylabel("explained ratio")
    ax2.set_xticks(idx)
    ax2.set_ylim(0, 1)
    ax2.grid(alpha=0.3, axis="y")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_scatter_figure(path, xs, ys, overlays, xlabel, ylabel) -> None:
    """overlays: (mean_xy, direction_xy, extent, label) per principal component."""
    _ensure_parent(path)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    ax.scatter(xs, ys, s=4, alpha=0.4, linewidths=0)
    for (mx, my), (dx, dy), extent, label in overlays:
        if extent <= 0:
            continue
        ax.plot(
            [mx - extent * dx, mx + extent * dx],
            [my - extent * dy, my + extent * dy],
            linewidth=2,
            label=label,
        )
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    if overlays:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
