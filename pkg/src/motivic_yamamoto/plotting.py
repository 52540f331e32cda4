"""Small matplotlib figures for numeric convergence and sweep summaries (Agg backend)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def convergence_figure(path: str | Path, truncations: Sequence[int], values: Sequence[float], tails: Sequence[float], title: str = "") -> None:
    """Truncated values with the band ``[value, value + tail]`` against the truncation."""
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    lo = list(values)
    hi = [v + t for v, t in zip(values, tails)]
    ax.plot(truncations, lo, marker="o", label="truncated value")
    ax.fill_between(truncations, lo, hi, alpha=0.25, label="tail bound")
    ax.set_xscale("log")
    ax.set_xlabel("truncation N")
    ax.set_ylabel("value")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def sweep_figure(path: str | Path, groups: Sequence[str], verified: Sequence[int], failed: Sequence[int], title: str = "") -> None:
    """Stacked bars of verified and failed instances per group."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(groups) + 2), 3.5))
    x = range(len(groups))
    ax.bar(x, verified, color="tab:green", label="verified")
    ax.bar(x, failed, bottom=verified, color="tab:red", label="not verified")
    ax.set_xticks(list(x))
    ax.set_xticklabels(groups, rotation=30, ha="right")
    ax.set_ylabel("instances")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
