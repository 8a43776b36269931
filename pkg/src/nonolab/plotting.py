"""SVG plot emission for sweep summaries.

All plots are self-contained vector files with axes, legends, and one point
shape per board size, regenerable from the summary CSV at any time.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

_MARKERS = ["o", "s", "^", "D", "v", "P", "X", "*"]


def _series_by_size(summaries: Sequence) -> dict[int, list]:
    by_size: dict[int, list] = {}
    for s in summaries:
        by_size.setdefault(s.size, []).append(s)
    for rows in by_size.values():
        rows.sort(key=lambda s: s.density)
    return by_size


def _marker(index: int) -> str:
    return _MARKERS[index % len(_MARKERS)]


def plot_transition(summaries: Sequence, path: Path) -> Path:
    """Mean proportion of filled cells inferred vs density, one line per size."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for k, (size, rows) in enumerate(sorted(_series_by_size(summaries).items())):
        ax.plot(
            [s.density for s in rows],
            [s.mean_proportion_inferred for s in rows],
            marker=_marker(k),
            markersize=4,
            color="black",
            linewidth=0.8,
            fillstyle="full",
            label=f"{size}x{size}",
        )
    ax.set_xlabel("filled cell density")
    ax.set_ylabel("mean proportion of filled cells inferred")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return Path(path)


def plot_difficulty(summaries: Sequence, path: Path) -> Path:
    """Per-size normalized solver propagations vs density (empty markers)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for k, (size, rows) in enumerate(sorted(_series_by_size(summaries).items())):
        ax.plot(
            [s.density for s in rows],
            [s.normalized_propagations for s in rows],
            marker=_marker(k),
            markersize=5,
            color="black",
            linewidth=0.8,
            fillstyle="none",
            label=f"{size}x{size}",
        )
    ax.set_xlabel("filled cell density")
    ax.set_ylabel("share of maximum mean propagations")
    ax.set_ylim(-0.02, 1.05)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return Path(path)


def plot_sizes(summaries: Sequence, path: Path) -> Path:
    """Mean clause and distinct-variable counts vs density, per size."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    for k, (size, rows) in enumerate(sorted(_series_by_size(summaries).items())):
        densities = [s.density for s in rows]
        ax1.plot(
            densities,
            [s.mean_clauses for s in rows],
            marker=_marker(k),
            markersize=4,
            linewidth=0.8,
            label=f"{size}x{size}",
        )
        ax2.plot(
            densities,
            [s.mean_distinct_variables for s in rows],
            marker=_marker(k),
            markersize=4,
            linewidth=0.8,
            label=f"{size}x{size}",
        )
    ax1.set_xlabel("filled cell density")
    ax1.set_ylabel("mean clauses")
    ax2.set_xlabel("filled cell density")
    ax2.set_ylabel("mean distinct variables")
    for ax in (ax1, ax2):
        ax.legend()
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return Path(path)


def plot_size_study(points: Sequence, path: Path) -> Path:
    """Formula-size study plot: clauses and both variable counts vs density."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    densities = [p.density for p in points]
    ax1.plot(densities, [p.mean_clauses for p in points], marker="o", markersize=4,
             color="black", linewidth=0.8)
    ax1.set_xlabel("filled cell density")
    ax1.set_ylabel("mean clauses")
    ax2.plot(densities, [p.mean_distinct_variables for p in points], marker="o",
             markersize=4, linewidth=0.8, label="distinct variables")
    ax2.plot(densities, [p.mean_total_literals for p in points], marker="s",
             markersize=4, linewidth=0.8, label="literal occurrences")
    ax2.set_xlabel("filled cell density")
    ax2.set_ylabel("mean variables")
    ax2.legend()
    for ax in (ax1, ax2):
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return Path(path)
