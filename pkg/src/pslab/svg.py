"""Minimal SVG emission for scatter plots, heatmaps and line series.

Output is plain text with fixed number formatting, so identical data gives
byte-identical documents.
"""

import math
from dataclasses import dataclass
from enum import Enum
from xml.sax.saxutils import escape

import numpy as np

from pslab.errors import DomainError

# heatmap values are log10 of the resolvent norm, clipped to [0, log10(HEATMAP_CAP)]
HEATMAP_CAP = 1e5

_W, _H, _PAD = 640, 480, 48


class PlotKind(str, Enum):
    SCATTER = "scatter"
    HEATMAP = "heatmap"
    LINE = "line"


@dataclass(frozen=True)
class PlotSpec:
    kind: PlotKind
    x_range: tuple
    y_range: tuple
    log_color: bool = True
    title: str = ""
    color: str = "#1f4e9c"
    marker_radius: float = 2.0
    cap: float = HEATMAP_CAP

    def __post_init__(self):
        object.__setattr__(self, "kind", PlotKind(self.kind))
        for name in ("x_range", "y_range"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
                raise DomainError(f"{name} must be finite with lo < hi, got {(lo, hi)}")
        if not self.cap > 1:
            raise DomainError("heatmap cap must exceed 1")


def _f(x: float) -> str:
    return f"{x:.3f}"


def _map(spec: PlotSpec, x, y):
    (x0, x1), (y0, y1) = spec.x_range, spec.y_range
    px = _PAD + (np.asarray(x, dtype=float) - x0) / (x1 - x0) * (_W - 2 * _PAD)
    py = _H - _PAD - (np.asarray(y, dtype=float) - y0) / (y1 - y0) * (_H - 2 * _PAD)
    return px, py


def ramp(t: float) -> str:
    """Color for t in [0, 1]: dark blue through cyan and yellow to dark red."""
    stops = [(0.0, (20, 20, 90)), (0.35, (30, 150, 220)), (0.65, (250, 220, 60)), (1.0, (150, 10, 10))]
    t = min(max(t, 0.0), 1.0)
    for (t0, c0), (t1, c1) in zip(stops, stops[1:]):
        if t <= t1:
            u = (t - t0) / (t1 - t0)
            r, g, b = (round(a + u * (b_ - a)) for a, b_ in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    return "#960a0a"


def _axes(spec: PlotSpec) -> list:
    (x0, x1), (y0, y1) = spec.x_range, spec.y_range
    out = [
        f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" height="{_H - 2 * _PAD}" '
        'fill="none" stroke="#444" stroke-width="1"/>',
        f'<text x="{_PAD}" y="{_H - _PAD + 16}" font-size="11">{x0:g}</text>',
        f'<text x="{_W - _PAD}" y="{_H - _PAD + 16}" font-size="11" text-anchor="end">{x1:g}</text>',
        f'<text x="{_PAD - 4}" y="{_H - _PAD}" font-size="11" text-anchor="end">{y0:g}</text>',
        f'<text x="{_PAD - 4}" y="{_PAD + 10}" font-size="11" text-anchor="end">{y1:g}</text>',
    ]
    if spec.title:
        out.append(f'<text x="{_W / 2}" y="{_PAD - 16}" font-size="14" text-anchor="middle">{escape(spec.title)}</text>')
    return out


def _scatter(spec, data):
    z = np.asarray(data, dtype=np.complex128).ravel()
    px, py = _map(spec, z.real, z.imag)
    return [
        f'<circle class="marker" cx="{_f(x)}" cy="{_f(y)}" r="{spec.marker_radius:g}" fill="{spec.color}"/>'
        for x, y in zip(px, py)
    ]


def _heatmap(spec, data):
    """``data`` is an ny x nx array of resolvent norms; row 0 is the bottom row."""
    v = np.asarray(data, dtype=float)
    if v.ndim != 2:
        raise DomainError("heatmap data must be a 2-D array")
    ny, nx = v.shape
    top = math.log10(spec.cap)
    with np.errstate(divide="ignore", invalid="ignore"):
        level = np.log10(v) / top if spec.log_color else v / spec.cap
    level = np.nan_to_num(level, nan=1.0, posinf=1.0, neginf=0.0)
    (x0, x1), (y0, y1) = spec.x_range, spec.y_range
    cw = (_W - 2 * _PAD) / nx
    ch = (_H - 2 * _PAD) / ny
    out = []
    for j in range(ny):
        for k in range(nx):
            x = _PAD + k * cw
            y = _H - _PAD - (j + 1) * ch
            out.append(
                f'<rect class="cell" x="{_f(x)}" y="{_f(y)}" width="{_f(cw)}" height="{_f(ch)}" '
                f'fill="{ramp(level[j, k])}"/>'
            )
    return out


def _line(spec, data):
    y = np.asarray(data, dtype=float).ravel()
    x = np.arange(1, y.size + 1)
    px, py = _map(spec, x, y)
    pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in zip(px, py))
    return [f'<polyline points="{pts}" fill="none" stroke="{spec.color}" stroke-width="1.2"/>']


def render_svg(spec: PlotSpec, data) -> str:
    """Self-contained SVG document.

    scatter: complex points, one marker each.  heatmap: 2-D array of
    resolvent norms, one cell each, log10 colored and clipped at ``spec.cap``.
    line: real series plotted against 1..len, one polyline vertex per value.
    """
    if np.asarray(data).size == 0:
        raise DomainError("cannot plot empty data")
    body = {PlotKind.SCATTER: _scatter, PlotKind.HEATMAP: _heatmap, PlotKind.LINE: _line}[spec.kind](spec, data)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, *_axes(spec), "</svg>"]) + "\n"


def write_svg(path, spec: PlotSpec, data):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(render_svg(spec, data))
