"""Deterministic figure rendering.

Fixed figure geometry, the Agg backend, and pinned PNG metadata keep the
output byte-stable for identical inputs and tool versions.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .exact import ExactPattern
from .figspec import FigureSpec
from .inputs import PlotInputError, read_snapshot, read_sweep_report

_PNG_METADATA = {"Software": "nsac-plot"}
_FIGSIZE_SNAPSHOT = (6.4, 9.0)
_FIGSIZE_CONVERGENCE = (6.4, 4.8)
_DPI = 120

PANELS = (("rho", 1), ("u", 2), ("chi", 3))


def build_snapshot_figure(spec: FigureSpec):
    """Figure object with three stacked panels (rho, u, chi), one curve
    per labelled file, optional dashed exact overlay on rho and u."""
    series = []
    for path, label in zip(spec.snapshot_files, spec.labels):
        x, rho, u, chi = read_snapshot(path)
        series.append((label, x, (rho, u, chi)))

    fig, axes = plt.subplots(3, 1, figsize=_FIGSIZE_SNAPSHOT, dpi=_DPI,
                             sharex=True)
    for (name, col), ax in zip(PANELS, axes):
        for label, x, fields in series:
            ax.plot(x, fields[col - 1], linewidth=1.0, label=f"eps = {label}")
        ax.set_ylabel(name)
        ax.grid(True, alpha=0.3)

    if spec.exact_overlay is not None:
        pattern = ExactPattern.load(spec.exact_overlay)
        t = spec.overlay_time()
        x0 = series[0][1]
        xs = np.linspace(float(x0[0]), float(x0[-1]), 2000)
        rho_ex, u_ex = pattern.sample(xs, t)
        for ax, vals in ((axes[0], rho_ex), (axes[1], u_ex)):
            ax.plot(xs, vals, "k--", linewidth=1.0, label="exact")

    axes[0].legend(loc="best", fontsize=8)
    axes[2].set_xlabel("x")
    if spec.title:
        fig.suptitle(spec.title)
    return fig


def render_snapshot_figure(spec: FigureSpec) -> Path:
    """Render the spec's figure to its out_path."""
    fig = build_snapshot_figure(spec)
    fig.savefig(spec.out_path, metadata=_PNG_METADATA)
    plt.close(fig)
    return Path(spec.out_path)


def build_convergence_figure(report_file):
    """Figure with log-log sup errors versus eps, one curve per component.

    Needs at least two eps rows; failed rows are skipped by the curves and
    annotated at the bottom of the figure.
    """
    rows = read_sweep_report(report_file)
    if len(rows) < 2:
        raise PlotInputError(
            f"{report_file}: a convergence plot needs at least 2 eps points, "
            f"found {len(rows)}"
        )
    ok = [r for r in rows if r.ok]
    failed = [r for r in rows if not r.ok]

    fig, ax = plt.subplots(figsize=_FIGSIZE_CONVERGENCE, dpi=_DPI)
    if ok:
        eps = np.array([r.eps for r in ok])
        for attr, label, marker in (("sup_rho", "sup |rho - rho_exact|", "o"),
                                    ("sup_u", "sup |u - u_exact|", "s"),
                                    ("sup_chi", "sup |chi^2 - 1|", "^")):
            vals = np.array([getattr(r, attr) for r in ok])
            positive = vals > 0.0
            if np.any(positive):
                ax.loglog(eps[positive], vals[positive], marker=marker,
                          linewidth=1.0, label=label)
    ax.set_xlabel("eps")
    ax.set_ylabel("sup error on exclusion region")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    for k, r in enumerate(failed):
        ax.annotate(f"eps = {r.eps:g}: {r.status}", xy=(0.02, 0.02 + 0.05 * k),
                    xycoords="axes fraction", fontsize=7, color="crimson")
    return fig


def render_convergence(report_file, out_path=None) -> Path:
    """Render the convergence figure next to the report (or to out_path)."""
    fig = build_convergence_figure(report_file)
    if out_path is None:
        out_path = Path(report_file).with_suffix(".png")
    fig.savefig(out_path, metadata=_PNG_METADATA)
    plt.close(fig)
    return Path(out_path)
