"""Figures written next to the CLI's tabular output. Headless (Agg) only."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .cost import CostReport  # noqa: E402
from .model import Schedule, Venue  # noqa: E402
from .superplan import Kind, SuperTimetable  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "savefig.dpi": 150,
}


def plot_pattern(s: Schedule, path: Path, timetable: Optional[SuperTimetable] = None) -> Path:
    """Home/away grid, one row per team; vertical lines mark super-game blocks."""
    grid = np.array([[1 if e.venue is Venue.HOME else 0 for e in row] for row in s.grid])
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4, 0.18 * s.days + 1), max(2.5, 0.18 * s.n + 1)))
        ax.imshow(grid, cmap="Greys", aspect="auto", vmin=0, vmax=1, interpolation="nearest")
        if timetable is not None:
            for start in sorted({g.start_day for g in timetable.games()})[1:]:
                ax.axvline(start - 0.5, color="tab:red", lw=0.8)
        ax.set_xticks(range(s.days))
        ax.set_xticklabels([str(d + 1) for d in range(s.days)])
        ax.set_yticks(range(s.n))
        ax.set_yticklabels([f"t{t + 1}" for t in range(s.n)])
        ax.set_xlabel("day")
        ax.set_title("home (black) / away (white)")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_block_extras(report: CostReport, path: Path) -> Path:
    """Simulated extra cost of every Left/Last block against its superdistance."""
    blocks = [b for b in report.blocks if b.kind is not Kind.NORMAL]
    labels = [f"{b.kind.value[:2]} u{b.labels[0] + 1}-u{b.labels[1] + 1}" for b in blocks]
    x = np.arange(len(blocks))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4, 0.35 * len(blocks) + 1), 3))
        ax.bar(x - 0.2, [float(b.bound) for b in blocks], 0.4, label="superdistance", color="0.75")
        ax.bar(x + 0.2, [float(b.extra) for b in blocks], 0.4, label="extra", color="tab:blue")
        ax.set_xticks(x)
        ax.set_xticklabels(labels, rotation=60, ha="right")
        ax.set_ylabel("distance")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_bench(names: Sequence[str], gaps: Sequence[float], path: Path,
               reference: Optional[Sequence[Optional[float]]] = None) -> Path:
    """Gap to the lower bound per instance (percent)."""
    x = np.arange(len(names))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4, 0.45 * len(names) + 1), 3))
        ax.bar(x, gaps, 0.6, color="tab:blue", label="this run")
        if reference is not None:
            pts = [(i, r) for i, r in enumerate(reference) if r is not None]
            if pts:
                ax.scatter([p[0] for p in pts], [p[1] for p in pts], marker="_", s=200,
                           color="k", label="published", zorder=3)
        ax.set_xticks(x)
        ax.set_xticklabels(names, rotation=60, ha="right")
        ax.set_ylabel("gap to lower bound (%)")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return Path(path)
