"""Optional matplotlib figures written next to the text/records output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import LatinSquare, Transversal  # noqa: E402

plt.rcParams.update({
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
})


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def square_plot(sq: LatinSquare, path, highlight: Transversal | None = None, title: str = "") -> Path:
    """Heat map of the symbols; cells of ``highlight`` are outlined."""
    n = sq.n
    fig, ax = plt.subplots(figsize=(0.35 * n + 1.2, 0.35 * n + 1.0))
    ax.imshow(sq.entries, cmap="tab10" if n <= 10 else "viridis", vmin=0, vmax=max(n - 1, 1))
    names = sq.tokens or tuple(str(k) for k in range(n))
    for i in range(n):
        for j in range(n):
            ax.text(j, i, names[sq.entries[i][j]], ha="center", va="center", fontsize=7, color="white")
    if highlight is not None:
        for i, j in highlight.cells:
            ax.add_patch(plt.Rectangle((j - 0.5, i - 0.5), 1, 1, fill=False, lw=2, ec="black"))
    ax.set_xticks([])
    ax.set_yticks([])
    if title:
        ax.set_title(title)
    return _save(fig, Path(path))


def sandwich_plot(verdicts, path) -> Path:
    """log L(r, n) against the two product bounds, one panel per n."""
    by_n: dict[int, list] = {}
    for v in verdicts:
        by_n.setdefault(v.n, []).append(v)
    ns = sorted(by_n)
    fig, axes = plt.subplots(1, len(ns), figsize=(2.4 * len(ns), 2.4), squeeze=False)
    for ax, n in zip(axes[0], ns):
        vs = sorted(by_n[n], key=lambda v: v.r)
        rs = [v.r for v in vs]
        ax.plot(rs, [math.log(v.count) for v in vs], "o-", label="L(r, n)")
        ax.plot(rs, [math.log(float(v.lower)) for v in vs], "v--", label="lower")
        ax.plot(rs, [math.log(float(v.upper)) for v in vs], "^--", label="upper")
        ax.set_title(f"n = {n}")
        ax.set_xlabel("r")
        ax.set_xticks(rs)
    axes[0][0].set_ylabel("log count")
    axes[0][0].legend(frameon=False, fontsize=7)
    return _save(fig, Path(path))


def timing_plot(outcomes, path) -> Path:
    """Seconds per acceptance criterion, coloured by status, with budgets as ticks."""
    colours = {"PASS": "tab:green", "FAIL": "tab:red", "INFO": "tab:gray"}
    fig, ax = plt.subplots(figsize=(6, 2.8))
    xs = range(len(outcomes))
    ax.bar(xs, [max(o.seconds, 1e-3) for o in outcomes], color=[colours[o.status] for o in outcomes])
    for x, o in zip(xs, outcomes):
        if o.budget:
            ax.plot([x - 0.4, x + 0.4], [o.budget] * 2, color="black", lw=1)
    ax.set_yscale("log")
    ax.set_xticks(list(xs), [str(o.number) for o in outcomes])
    ax.set_xlabel("criterion")
    ax.set_ylabel("seconds")
    return _save(fig, Path(path))
