"""Static SVG figures: phase plots with the flow/jump sets, V against time, log-V field."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from .dynamics import SystemParams
from .hybridsim import HybridArc, LawKind, ResetLaw

_SVG_META = {"Date": None, "Creator": None}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "resetorbit"
    plt.rcParams["svg.fonttype"] = "path"
    return plt


def draw_sets(ax, p: SystemParams, extent: float) -> None:
    """Jump set, the C0 curve, and hatching over the wedges outside the flow set."""
    from matplotlib.patches import Rectangle

    th = p.theta_hat
    ax.axvline(0.0, color="tab:red", lw=1.0, label="D")
    ax.plot([th, th, -th, -th], [extent, 0.0, 0.0, -extent], color="tab:green", lw=1.5, ls="--", label="C0")
    for x0, y0 in ((0.0, 0.0), (-th, -extent)):
        ax.add_patch(Rectangle((x0, y0), th, extent, fill=False, hatch="//", lw=0.0, edgecolor="0.7"))


def phase_plot(
    path: Path | str,
    p: SystemParams,
    arcs: Sequence[HybridArc],
    orbit: np.ndarray | None = None,
    v_series: Sequence[tuple[np.ndarray, np.ndarray]] | None = None,
    title: str = "",
    law: ResetLaw | None = None,
) -> None:
    """Phase portrait of each arc; with ``v_series`` a second panel shows V(t) on a log axis."""
    plt = _pyplot()
    ncols = 2 if v_series else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5.5 * ncols, 5.0), squeeze=False)
    ax = axes[0, 0]
    pts = np.concatenate([a.samples()[:, 2:] for a in arcs])
    extent = 1.1 * float(max(np.abs(pts).max(), 2 * p.theta_hat))
    if law is None or law.kind is LawKind.CENTERED:
        draw_sets(ax, p, extent)
    else:
        s = law.guard_sign * law.eps_phi
        ax.plot([s, s], [0.0, extent], color="tab:red", lw=1.0, label="guard (x2 > 0)")
        ax.plot([-s, -s], [-extent, 0.0], color="tab:red", lw=1.0, ls="-.", label="guard (x2 < 0)")
    for i, arc in enumerate(arcs):
        s = arc.samples()
        for seg in arc.segments:
            ax.plot(seg.states[:, 0], seg.states[:, 1], lw=0.9, color=f"C{i % 10}")
        ax.plot(s[0, 2], s[0, 3], "o", ms=4, color=f"C{i % 10}", label=f"x0 = ({s[0, 2]:g}, {s[0, 3]:g})")
        for jp in arc.jumps:
            ax.plot([jp.pre.x1, jp.post.x1], [jp.pre.x2, jp.post.x2], ls=":", lw=0.6, color=f"C{i % 10}")
    if orbit is not None:
        for arc in orbit:
            ax.plot(arc[:, 0], arc[:, 1], color="k", lw=1.6)
    ax.set_xlim(-extent, extent)
    ax.set_ylim(-extent, extent)
    ax.set_xlabel("x1 [m]")
    ax.set_ylabel("x2 [m/s]")
    ax.legend(loc="upper left", fontsize=7)
    if title:
        ax.set_title(title)
    if v_series:
        axv = axes[0, 1]
        for i, (t, v) in enumerate(v_series):
            axv.semilogy(t, np.maximum(v, 1e-300), lw=1.0, color=f"C{i % 10}")
        axv.set_xlabel("t [s]")
        axv.set_ylabel("V [J]")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)


def field_plot(path: Path | str, p: SystemParams, x1: np.ndarray, x2: np.ndarray, V: np.ndarray) -> None:
    """Filled contours of log10 V; cells outside the domain stay blank."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        logv = np.log10(V)
    logv[~np.isfinite(logv)] = np.nan
    cs = ax.contourf(x1, x2, logv.T, levels=30)
    fig.colorbar(cs, ax=ax, label="log10 V")
    draw_sets(ax, p, float(max(np.abs(x2).max(), 2 * p.theta_hat)))
    ax.set_xlabel("x1 [m]")
    ax.set_ylabel("x2 [m/s]")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)
