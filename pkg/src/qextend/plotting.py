"""Matplotlib figures accompanying the text reports.

The SVG emitters in :mod:`qextend.svg` are the byte-stable outputs; these
figures are for human inspection and are written in whatever format the
file suffix names (png, pdf, svg, ...).
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from matplotlib.figure import Figure

from qextend.extensibility import EnvelopePoint, PlatformModel, normalized_usage
from qextend.svg import PALETTE, REGIME_COLORS
from qextend.volume import Regime, RegimeResult

PathLike = Union[str, Path]


def _new_figure(width: float = 7.0, height: float | None = None) -> Figure:
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    return Figure(figsize=(width, height or width * golden_ratio), dpi=100)


def envelope_figure(points: Sequence[EnvelopePoint], platform: PlatformModel, dense: int = 400) -> Figure:
    vqs = np.array([p.vq for p in points])
    grid = np.geomspace(vqs.min(), vqs.max(), dense)
    fig = _new_figure()
    ax = fig.add_subplot(1, 1, 1)
    for i, res in enumerate(platform.resources):
        usage = [normalized_usage(res, v, platform.vq_initial) for v in grid]
        ax.plot(grid, usage, color=PALETTE[i % len(PALETTE)], lw=1.5, label=res.name)
    ax.plot(vqs, [p.normalized_usage for p in points], color="black", lw=4, alpha=0.8, label="critical")
    cross = [p for p in points if p.crossover]
    if cross:
        ax.plot([p.vq for p in cross], [p.normalized_usage for p in cross], "o", mfc="white", mec="black")
    ax.axhline(1.0, color="grey", ls="--", lw=1)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("quantum volume")
    ax.set_ylabel(r"$R/R_\mathrm{max}$")
    ax.set_title(platform.name)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    return fig


def regime_figure(result: RegimeResult) -> Figure:
    t = result.thresholds
    top = 10.0 ** math.ceil(math.log10(max(10 * math.isqrt(t.universal_vq), 10 * result.point.n_qubits,
                                           10 * result.point.depth)))
    fig = _new_figure(5.5, 5.0)
    ax = fig.add_subplot(1, 1, 1)
    corners = [
        (Regime.CLASSICALLY_SIMULABLE, 1.0),
        (Regime.SUPREMACY_NISQ, float(t.classical_sim_bound)),
        (Regime.QUANTUM_SIMULATION, math.sqrt(t.simulation_vq)),
        (Regime.FAULT_TOLERANT_UNIVERSAL, math.sqrt(t.universal_vq)),
    ]
    for regime, m in corners:
        ax.fill_between([m, top], m, top, color=REGIME_COLORS[regime], label=regime.label, lw=0)
    ax.plot([result.point.n_qubits], [result.point.depth], "ko")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlim(1, top)
    ax.set_ylim(1, top)
    ax.set_xlabel("qubits N")
    ax.set_ylabel("depth d")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    return fig


def save_figure(fig: Figure, path: PathLike) -> Path:
    path = Path(path)
    fig.savefig(path, metadata={"Software": None} if path.suffix.lower() == ".png" else None)
    return path
