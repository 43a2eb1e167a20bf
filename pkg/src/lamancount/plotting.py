"""Figures for count and max reports."""

from __future__ import annotations

from math import comb
from pathlib import Path
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def new_figure(width: float = 5.0, height: Optional[float] = None):
    golden = (5 ** 0.5 - 1) / 2
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(width, height or width * golden))
    return fig, ax


def save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_counts(points: Iterable[tuple[int, int]], path: str | Path,
                maxima: Optional[dict[int, int]] = None, title: str = "") -> Path:
    """Laman numbers against vertex count, with the closed-form upper bounds.

    ``points`` are ``(n, laman_number)`` pairs; ``maxima`` maps ``n`` to the
    per-n maximum and is highlighted when given.
    """
    pts = list(points)
    with plt.rc_context(STYLE):
        fig, ax = new_figure()
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=10, alpha=0.5, color="0.4", label="Laman number", zorder=2)
            ns = range(max(3, min(xs)), max(xs) + 1)
            ax.plot(ns, [comb(2 * n - 4, n - 2) for n in ns], "--", lw=1, label=r"$\binom{2n-4}{n-2}$")
            ax.plot(ns, [4 ** (n - 2) for n in ns], ":", lw=1, label=r"$4^{n-2}$")
        if maxima:
            mx = sorted(maxima.items())
            ax.plot([n for n, _ in mx], [v for _, v in mx], "o-", ms=4, color="C3", label="maximum", zorder=3)
        ax.set_yscale("log")
        ax.set_xlabel("vertices $n$")
        ax.set_ylabel("realizations")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
    return save(fig, path)
