"""Figures written next to the delimited CLI output."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

from matplotlib.figure import Figure

from .report import Report

__all__ = ["plot_betti", "plot_census"]

_STATUS_STYLE = {
    "two-free-satisfied": ("tab:green", "o"),
    "ruling": ("tab:blue", "s"),
    "fails": ("tab:red", "x"),
    "unknown": ("tab:gray", "^"),
}


def _save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata keeps the bytes reproducible
    fig.savefig(path, dpi=120, metadata={"Software": None} if path.suffix == ".png" else None)
    return path


def plot_betti(report: Report, path: str | Path) -> Path:
    """Bar chart of the Betti numbers b_{2k} of a described flag variety."""
    betti = report.subject["poincare_polynomial"]
    fig = Figure(figsize=(max(4.0, 0.25 * len(betti) + 2), 3.2))
    ax = fig.add_subplot()
    ax.bar(range(len(betti)), betti, color="tab:blue", width=0.8)
    ax.set_xlabel("complex dimension of Schubert cell")
    ax.set_ylabel("number of cells")
    ax.set_title(f"{report.subject['flag']}: dim {report.subject['dimension']}")
    ax.set_xlim(-0.7, len(betti) - 0.3)
    fig.tight_layout()
    return _save(fig, path)


def plot_census(rows: Sequence[dict], ambient: Report, path: str | Path) -> Path:
    """Per non-ruling generator: relative (m, s) of every census row against the
    ambient thresholds m(Y), s(Y).  Case (ii) is the open lower-left quadrant.
    """
    classes = [c for c in ambient.classes if c["kind"] == "two-free"]
    fig = Figure(figsize=(4.2 * max(1, len(classes)), 3.8))
    if not classes:
        ax = fig.add_subplot()
        ax.text(0.5, 0.5, "no two-free generators", ha="center", va="center")
        ax.set_axis_off()
        return _save(fig, path)
    for k, c in enumerate(classes):
        ax = fig.add_subplot(1, len(classes), k + 1)
        i = c["generator"]
        seen = set()
        for row in rows:
            entry = next((e for e in row["classes"] if e["generator"] == i), None)
            if entry is None or entry["s_rel"] is None:
                continue
            colour, marker = _STATUS_STYLE[entry["status"]]
            label = None if entry["status"] in seen else entry["status"]
            seen.add(entry["status"])
            ax.scatter(entry["m_rel"], float(Fraction(entry["s_rel"])), c=colour, marker=marker, label=label)
        ax.axvline(c["m"], color="k", lw=0.8, ls="--")
        if c["s"] is not None:
            ax.axhline(c["s"], color="k", lw=0.8, ls=":")
        ax.set_xlabel("m_rel")
        ax.set_ylabel("s_rel")
        ax.set_title(f"beta_{i}: m(Y)={c['m']}, s(Y)={c['s'] if c['s'] is not None else '?'}")
        if seen:
            ax.legend(fontsize=7, loc="upper left")
    fig.tight_layout()
    return _save(fig, path)
