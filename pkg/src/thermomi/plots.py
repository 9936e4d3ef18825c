"""Render sweep reports to PNG files.

Figures are written headlessly next to whatever delimited output the
caller asked for; nothing here opens a window.  Each renderer skips
cleanly when the report carries no data for it, so a gsv-only sweep still
produces the curves it can.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import SweepReport

ROUTE_SERIES = (
    ("mi_thermo_generalized", "thermo generalized", "C0", "o"),
    ("mi_thermo_classical", "thermo classical", "C1", "s"),
    ("mi_gsv", "mmse integral", "C2", "^"),
)


def _series(report: SweepReport, field: str) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    for r in report.records:
        v = getattr(r, field)
        if v is not None:
            xs.append(r.snr_db)
            ys.append(v)
    return xs, ys


def _save(fig, path: Path) -> None:
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def _plot_mi(report: SweepReport, path: Path) -> bool:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    drew = False
    for field, label, color, marker in ROUTE_SERIES:
        xs, ys = _series(report, field)
        if xs:
            ax.plot(xs, ys, color=color, marker=marker, ms=4, lw=1.2, label=label)
            drew = True
    xs, ys = _series(report, "mi_closed_form")
    if xs:
        ax.plot(xs, ys, "k--", lw=1.0, label="exact")
        drew = True
    if not drew:
        plt.close(fig)
        return False
    ax.set_xlabel("snr (dB)")
    ax.set_ylabel("mutual information (nats)")
    ax.legend(frameon=False)
    ax.grid(True, alpha=0.3)
    _save(fig, path)
    return True


def _plot_mmse(report: SweepReport, path: Path) -> bool:
    xs, ys = _series(report, "mmse")
    if not xs:
        return False
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, ys, color="C3", marker="o", ms=4, lw=1.2)
    ax.set_xlabel("snr (dB)")
    ax.set_ylabel("mmse")
    ax.grid(True, alpha=0.3)
    _save(fig, path)
    return True


def _plot_residuals(report: SweepReport, path: Path) -> bool:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    drew = False
    xs, ys = _series(report, "identity_residual_max")
    pairs = [(x, abs(y)) for x, y in zip(xs, ys) if y != 0.0]
    if pairs:
        ax.semilogy(*zip(*pairs), color="C4", marker="o", ms=4, lw=1.2, label="free-energy identity")
        drew = True
    xs, ys = _series(report, "gsv_residual")
    pairs = [(x, abs(y)) for x, y in zip(xs, ys) if y != 0.0]
    if pairs:
        ax.semilogy(*zip(*pairs), color="C5", marker="^", ms=4, lw=1.2, label="dI/dbeta vs mmse/2")
        drew = True
    if not drew:
        plt.close(fig)
        return False
    ax.set_xlabel("snr (dB)")
    ax.set_ylabel("|residual|")
    ax.legend(frameon=False)
    ax.grid(True, alpha=0.3, which="both")
    _save(fig, path)
    return True


def render_sweep_figures(report: SweepReport, outdir: str | Path) -> list[Path]:
    """Write the mi, mmse, and residual figures; returns the paths written."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, renderer in (
        ("mi_vs_snr.png", _plot_mi),
        ("mmse_vs_snr.png", _plot_mmse),
        ("residuals_vs_snr.png", _plot_residuals),
    ):
        path = out / name
        if renderer(report, path):
            written.append(path)
    return written
