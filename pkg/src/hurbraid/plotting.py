"""Figures for census reports (written next to the CSV output)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .pipeline import ComponentCensus  # noqa: E402

__all__ = ["plot_components_by_r", "plot_orbit_lengths", "write_figures"]


def plot_components_by_r(census: ComponentCensus, path) -> Path:
    """Stacked bars: components per number of branch points, one color per group."""
    rs = sorted({w.r for w in census.rows}) or [3]
    fig, ax = plt.subplots(figsize=(6, 3.6))
    bottom = np.zeros(len(rs))
    for g in census.groups:
        vals = np.array([sum(w.n_orbits for w in census.rows
                             if w.group == g and w.r == r and w.known) for r in rs], dtype=float)
        if vals.any():
            ax.bar([str(r) for r in rs], vals, bottom=bottom, label=g)
            bottom += vals
    for x, h in enumerate(bottom):
        ax.text(x, h, f"{int(h)}", ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("r (branch points)")
    ax.set_ylabel("components")
    ax.set_title(f"degree {census.degree}, genus {census.genus}: {census.total} components")
    if census.groups:
        ax.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_orbit_lengths(census: ComponentCensus, path) -> Path:
    """Largest orbit length per row on a log scale, grouped by r."""
    rows = [w for w in census.sorted_rows() if isinstance(w.max_length, int)]
    fig, ax = plt.subplots(figsize=(7, 3.6))
    if rows:
        x = np.arange(len(rows))
        y = np.array([w.max_length for w in rows], dtype=float)
        r = np.array([w.r for w in rows])
        sc = ax.scatter(x, y, c=r, cmap="viridis", s=14)
        ax.set_yscale("log")
        fig.colorbar(sc, ax=ax, label="r")
    ax.set_xlabel("row (sorted by group, r, type)")
    ax.set_ylabel("largest orbit length")
    ax.set_title(f"degree {census.degree}: orbit lengths")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(census: ComponentCensus, outdir, stem: str = "census") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [plot_components_by_r(census, outdir / f"{stem}_components_by_r.png"),
            plot_orbit_lengths(census, outdir / f"{stem}_orbit_lengths.png")]
