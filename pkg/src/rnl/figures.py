"""Matplotlib rendering for the report command.

Figures are written to files (no interactive backend); the textual report
output is produced elsewhere and stays the source of truth.
"""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

METRIC_LABELS = ("quantum cost", "delay", "garbage outputs")


def save_comparison_chart(
    title: str,
    rows: list[tuple[str, int, int, int]],
    path: str,
) -> str:
    """Grouped bar chart of (quantum cost, delay, garbage) per design."""
    names = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    width = 0.25
    for k, label in enumerate(METRIC_LABELS):
        xs = [i + (k - 1) * width for i in range(len(rows))]
        ax.bar(xs, [r[k + 1] for r in rows], width, label=label)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(names, rotation=15, ha="right", fontsize=8)
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.set_axisbelow(True)
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_scaling_chart(
    rows: list[tuple[str, int, int, int | None]],
    path: str,
) -> str:
    """Quantum cost against counter width, measured and predicted per mode."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    for mode in ("async", "sync"):
        pts = [(n, qc) for m, n, qc, _ in rows if m == mode]
        if pts:
            ax.plot(*zip(*pts), marker="o", label=f"{mode} measured")
        pred = [(n, p) for m, n, _, p in rows if m == mode and p is not None]
        if pred:
            ax.plot(*zip(*pred), linestyle="--", alpha=0.7, label=f"{mode} predicted")
    ax.set_xlabel("counter width (bits)")
    ax.set_ylabel("quantum cost")
    ax.set_title("counter quantum cost scaling")
    ax.legend(fontsize=8)
    ax.set_axisbelow(True)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def figure_path(directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)
