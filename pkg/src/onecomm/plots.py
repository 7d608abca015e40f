"""Matplotlib figures written next to the text/JSON reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_class_sizes(sizes, commutator_classes, path: Path, title: str = "") -> Path:
    """Bar per conjugacy class (log scale), commutator classes in one colour."""
    sizes = np.asarray(sizes)
    is_comm = np.asarray(commutator_classes, dtype=bool)
    fig, ax = plt.subplots(figsize=(max(6, len(sizes) * 0.12), 4))
    x = np.arange(len(sizes))
    ax.bar(x[is_comm], sizes[is_comm], color="tab:blue", label="commutators")
    ax.bar(x[~is_comm], sizes[~is_comm], color="tab:red", label="noncommutators")
    ax.set_yscale("log")
    ax.set_xlabel("conjugacy class")
    ax.set_ylabel("class size")
    ax.set_title(title)
    ax.legend()
    return _finish(fig, path)


def plot_frobenius_sums(sums, path: Path, tol: float = 1e-6, title: str = "") -> Path:
    mags = np.abs(np.asarray(sums, dtype=complex))
    fig, ax = plt.subplots(figsize=(max(6, len(mags) * 0.3), 4))
    floor = tol / 100
    ax.bar(np.arange(len(mags)), np.maximum(mags, floor),
           color=["tab:blue" if m > tol else "tab:red" for m in mags])
    ax.axhline(tol, color="k", lw=0.8, ls="--", label=f"zero tolerance {tol:g}")
    ax.set_yscale("log")
    ax.set_xlabel("conjugacy class")
    ax.set_ylabel(r"$|\sum_\chi \chi(g)/\chi(1)|$")
    ax.set_title(title)
    ax.legend()
    return _finish(fig, path)


def plot_search_timings(rows: list[dict], path: Path) -> Path:
    """Stacked per-filter time for each searched group."""
    names = [r["name"] for r in rows]
    stages = sorted({s for r in rows for s in r["timings"]})
    fig, ax = plt.subplots(figsize=(max(6, len(rows) * 0.6), 4))
    bottom = np.zeros(len(rows))
    for stage in stages:
        vals = np.array([r["timings"].get(stage, 0.0) for r in rows])
        ax.bar(names, vals, bottom=bottom, label=stage)
        bottom += vals
    ax.set_ylabel("seconds")
    ax.tick_params(axis="x", rotation=45)
    ax.legend(fontsize="small")
    return _finish(fig, path)
