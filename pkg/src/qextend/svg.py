"""Deterministic SVG 1.1 emitters for envelope plots and regime maps.

Output is built from fixed-precision strings only, so identical inputs give
identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence
from xml.sax.saxutils import escape, quoteattr

from qextend.errors import DomainError
from qextend.extensibility import EnvelopePoint, PlatformModel, normalized_usage
from qextend.volume import Regime, RegimeResult

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf")

REGIME_COLORS = {
    Regime.CLASSICALLY_SIMULABLE: "#f4a6a6",
    Regime.SUPREMACY_NISQ: "#f7e08a",
    Regime.QUANTUM_SIMULATION: "#b9e3a5",
    Regime.FAULT_TOLERANT_UNIVERSAL: "#6cc070",
}


@dataclass(frozen=True)
class AxesConfig:
    width: int = 720
    height: int = 480
    margin_left: int = 80
    margin_right: int = 150
    margin_top: int = 40
    margin_bottom: int = 60
    title: Optional[str] = None
    x_label: str = "quantum volume"
    y_label: str = "R / R_max"


def _n(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


class _LogAxes:
    def __init__(self, axes: AxesConfig, x_range: tuple[float, float], y_range: tuple[float, float]):
        self.axes = axes
        self.x0, self.x1 = (math.log10(v) for v in x_range)
        self.y0, self.y1 = (math.log10(v) for v in y_range)
        self.left = axes.margin_left
        self.right = axes.width - axes.margin_right
        self.top = axes.margin_top
        self.bottom = axes.height - axes.margin_bottom

    def px(self, x: float, y: float) -> tuple[float, float]:
        fx = (math.log10(x) - self.x0) / (self.x1 - self.x0)
        fy = (math.log10(y) - self.y0) / (self.y1 - self.y0)
        return self.left + fx * (self.right - self.left), self.bottom - fy * (self.bottom - self.top)

    def frame(self, x_label: str, y_label: str) -> list[str]:
        out = [
            '<g class="axes" stroke="#000000" stroke-width="1" fill="none">',
            f'<rect x="{_n(self.left)}" y="{_n(self.top)}" width="{_n(self.right - self.left)}" '
            f'height="{_n(self.bottom - self.top)}"/>',
        ]
        ticks = ['<g class="ticks" font-family="sans-serif" font-size="11" fill="#000000">']
        for k in range(math.ceil(self.x0 - 1e-9), math.floor(self.x1 + 1e-9) + 1):
            x, _ = self.px(10.0**k, 10.0**self.y0)
            out.append(f'<line x1="{_n(x)}" y1="{_n(self.bottom)}" x2="{_n(x)}" y2="{_n(self.bottom + 5)}"/>')
            ticks.append(f'<text x="{_n(x)}" y="{_n(self.bottom + 18)}" text-anchor="middle">1e{k}</text>')
        for k in range(math.ceil(self.y0 - 1e-9), math.floor(self.y1 + 1e-9) + 1):
            _, y = self.px(10.0**self.x0, 10.0**k)
            out.append(f'<line x1="{_n(self.left - 5)}" y1="{_n(y)}" x2="{_n(self.left)}" y2="{_n(y)}"/>')
            ticks.append(f'<text x="{_n(self.left - 8)}" y="{_n(y + 4)}" text-anchor="end">1e{k}</text>')
        out.append("</g>")
        ticks.append("</g>")
        mid_x = (self.left + self.right) / 2
        mid_y = (self.top + self.bottom) / 2
        labels = [
            f'<text x="{_n(mid_x)}" y="{_n(self.bottom + 42)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{escape(x_label)}</text>',
            f'<text x="{_n(self.left - 55)}" y="{_n(mid_y)}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="13" transform="rotate(-90 {_n(self.left - 55)} {_n(mid_y)})">{escape(y_label)}</text>',
        ]
        return out + ticks + labels


def _header(axes: AxesConfig) -> list[str]:
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{axes.width}" height="{axes.height}" viewBox="0 0 {axes.width} {axes.height}">',
        f'<rect x="0" y="0" width="{axes.width}" height="{axes.height}" fill="#ffffff"/>',
    ]
    if axes.title:
        lines.append(
            f'<text x="{_n(axes.width / 2)}" y="22" text-anchor="middle" font-family="sans-serif" '
            f'font-size="15">{escape(axes.title)}</text>'
        )
    return lines


def _decade_bounds(lo: float, hi: float) -> tuple[float, float]:
    a = math.floor(math.log10(lo) + 1e-12)
    b = math.ceil(math.log10(hi) - 1e-12)
    if b <= a:
        b = a + 1
    return 10.0**a, 10.0**b


def emit_envelope_svg(
    points: Sequence[EnvelopePoint], platform: PlatformModel, axes: AxesConfig | None = None
) -> str:
    """Log-log plot of every resource's normalized usage and the critical envelope.

    Emits one ``polyline`` per resource (class ``resource``), one thick
    ``path`` (class ``envelope``) with a vertex per envelope point, and a
    ``circle`` (class ``crossover``) wherever the critical resource changes.
    """
    axes = axes or AxesConfig(title=f"{platform.name}: resource usage vs quantum volume")
    if len(points) < 2:
        raise DomainError(f"an envelope plot needs at least 2 points, got {len(points)}")
    vqi = platform.vq_initial
    curves = {
        res.name: [(p.vq, normalized_usage(res, p.vq, vqi)) for p in points] for res in platform.resources
    }
    all_xy = [(p.vq, p.normalized_usage) for p in points] + [xy for c in curves.values() for xy in c]
    for x, y in all_xy:
        if not (math.isfinite(x) and math.isfinite(y) and x > 0 and y > 0):
            raise DomainError(f"cannot plot non-finite or non-positive coordinate ({x!r}, {y!r})")
    xs = [x for x, _ in all_xy]
    ys = [y for _, y in all_xy]
    x_range = (min(xs), max(xs))
    if x_range[0] == x_range[1]:
        raise DomainError("envelope points must span a range of quantum volumes")
    frame = _LogAxes(axes, x_range, _decade_bounds(min(ys), max(max(ys), 1.0)))

    out = _header(axes) + frame.frame(axes.x_label, axes.y_label)
    _, limit_y = frame.px(x_range[0], 1.0)
    out.append(
        f'<line class="limit" x1="{_n(frame.left)}" y1="{_n(limit_y)}" x2="{_n(frame.right)}" '
        f'y2="{_n(limit_y)}" stroke="#888888" stroke-dasharray="6 4"/>'
    )
    for i, (name, curve) in enumerate(curves.items()):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{_n(px)},{_n(py)}" for px, py in (frame.px(x, y) for x, y in curve))
        out.append(
            f'<polyline class="resource" data-resource={quoteattr(name)} fill="none" '
            f'stroke="{color}" stroke-width="1.5" points="{coords}"/>'
        )
        ly = axes.margin_top + 16 * (i + 1)
        out.append(
            f'<text class="legend" x="{_n(frame.right + 12)}" y="{_n(ly)}" font-family="sans-serif" '
            f'font-size="12" fill="{color}">{escape(name)}</text>'
        )
    vertices = [frame.px(p.vq, p.normalized_usage) for p in points]
    d = "M " + " L ".join(f"{_n(x)},{_n(y)}" for x, y in vertices)
    out.append(f'<path class="envelope" fill="none" stroke="#000000" stroke-width="4" d="{d}"/>')
    for p, (x, y) in zip(points, vertices):
        if p.crossover:
            out.append(
                f'<circle class="crossover" data-resource={quoteattr(p.critical)} cx="{_n(x)}" cy="{_n(y)}" '
                'r="4" fill="#ffffff" stroke="#000000" stroke-width="1.5"/>'
            )
    ly = axes.margin_top + 16 * (len(curves) + 1)
    out.append(
        f'<text class="legend" x="{_n(frame.right + 12)}" y="{_n(ly)}" font-family="sans-serif" '
        'font-size="12" fill="#000000">critical</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_regime_svg(result: RegimeResult, axes: AxesConfig | None = None) -> str:
    """Regime map over the N-d plane (log axes) with ``result``'s point marked."""
    axes = axes or AxesConfig(title="quantum volume regimes", x_label="qubits N", y_label="depth d")
    t = result.thresholds
    top = max(10 * math.isqrt(t.universal_vq), 10 * result.point.n_qubits, 10 * result.point.depth)
    lo, hi = _decade_bounds(1.0, float(top))
    frame = _LogAxes(axes, (lo, hi), (lo, hi))
    out = _header(axes)
    # nested quadrants {min(N, d) >= m}, painted from least to most capable
    corners = [
        (Regime.CLASSICALLY_SIMULABLE, 1.0),
        (Regime.SUPREMACY_NISQ, float(t.classical_sim_bound)),
        (Regime.QUANTUM_SIMULATION, math.sqrt(t.simulation_vq)),
        (Regime.FAULT_TOLERANT_UNIVERSAL, math.sqrt(t.universal_vq)),
    ]
    for i, (regime, m) in enumerate(corners):
        x, y = frame.px(max(m, lo), max(m, lo))
        out.append(
            f'<rect class="regime" data-regime="{regime.label}" x="{_n(x)}" y="{_n(frame.top)}" '
            f'width="{_n(frame.right - x)}" height="{_n(y - frame.top)}" fill="{REGIME_COLORS[regime]}"/>'
        )
        out.append(
            f'<text class="legend" x="{_n(frame.right + 12)}" y="{_n(axes.margin_top + 16 * (i + 1))}" '
            f'font-family="sans-serif" font-size="11" fill="#000000">{regime.label}</text>'
        )
    out += frame.frame(axes.x_label, axes.y_label)
    px, py = frame.px(result.point.n_qubits, result.point.depth)
    out.append(
        f'<circle class="point" data-regime="{result.regime.label}" cx="{_n(px)}" cy="{_n(py)}" r="5" '
        'fill="#000000"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
