"""
Static SVG figures from sweep records: (theta, T) heatmaps and line traces
against T.  Output is plain text and deterministic for identical input.
"""

from typing import List, Sequence, Tuple

import numpy as np

from .serialize import SchemaError, format_float
from .sweep import RECORD_FIELDS, SweepRecord

__all__ = ["to_grid", "heatmap_svg", "line_svg"]

# viridis sampled at 0, 0.25, 0.5, 0.75, 1
_ANCHORS = np.array([
    [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
], dtype=float)
_TRACE_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

WIDTH, HEIGHT = 560, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 110, 40, 60


def _color(frac: float) -> str:
    frac = min(max(frac, 0.0), 1.0)
    pos = frac * (len(_ANCHORS) - 1)
    k = min(int(pos), len(_ANCHORS) - 2)
    rgb = _ANCHORS[k] + (pos - k) * (_ANCHORS[k + 1] - _ANCHORS[k])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _num(x: float) -> str:
    return format(float(x), ".6g")


def to_grid(records: Sequence[SweepRecord], field: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reshape records into ``(thetas, Ts, values[theta, T])``.

    Raises
    ------
    SchemaError
        Unknown field, or records that do not form a full row-major grid.
    """
    if field not in RECORD_FIELDS[2:]:
        raise SchemaError(f"unknown field {field!r}")
    if not records:
        raise SchemaError("no records")
    theta = np.array([r.theta_deg for r in records])
    T = np.array([r.T_deg for r in records])
    thetas = np.unique(theta)
    Ts = np.unique(T)
    n_th, n_T = thetas.size, Ts.size
    expected_th = np.repeat(thetas, n_T)
    expected_T = np.tile(Ts, n_th)
    if len(records) != n_th * n_T or not (
            np.array_equal(theta, expected_th) and np.array_equal(T, expected_T)):
        raise SchemaError("records do not form a rectangular row-major (theta, T) grid")
    values = np.array([getattr(r, field) for r in records]).reshape(n_th, n_T)
    return thetas, Ts, values


def _edges(centers: np.ndarray) -> np.ndarray:
    if centers.size == 1:
        return np.array([centers[0] - 0.5, centers[0] + 0.5])
    mid = 0.5 * (centers[1:] + centers[:-1])
    return np.concatenate([[2 * centers[0] - mid[0]], mid, [2 * centers[-1] - mid[-1]]])


def _frame(title: str, x_label: str, y_label: str) -> List[str]:
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{LEFT + pw / 2}" y="{TOP - 14}" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{LEFT + pw / 2}" y="{HEIGHT - 16}" text-anchor="middle">{x_label}</text>',
        f'<text x="18" y="{TOP + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + ph / 2})">{y_label}</text>',
    ]


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    if hi == lo:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def heatmap_svg(records: Sequence[SweepRecord], field: str) -> str:
    """Heatmap of ``field`` with theta horizontal and T vertical (degrees).

    Colors map linearly from 0 to the field maximum.
    """
    thetas, Ts, values = to_grid(records, field)
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    xe, ye = _edges(thetas), _edges(Ts)
    x0, x1, y0, y1 = xe[0], xe[-1], ye[0], ye[-1]
    sx = lambda v: LEFT + (v - x0) / (x1 - x0) * pw
    sy = lambda v: TOP + ph - (v - y0) / (y1 - y0) * ph
    vmax = float(values.max())
    scale = vmax if vmax > 0 else 1.0

    out = _frame(f"{field}", "theta (deg)", "T = a t (deg)")
    for i in range(thetas.size):
        for j in range(Ts.size):
            x, y = sx(xe[i]), sy(ye[j + 1])
            w, h = sx(xe[i + 1]) - x, sy(ye[j]) - y
            out.append(f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" '
                       f'height="{_num(h)}" fill="{_color(values[i, j] / scale)}"/>')
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" '
               f'fill="none" stroke="black"/>')
    for v in _ticks(thetas[0], thetas[-1]):
        out.append(f'<text x="{_num(sx(v))}" y="{TOP + ph + 16}" text-anchor="middle">{_num(v)}</text>')
    for v in _ticks(Ts[0], Ts[-1]):
        out.append(f'<text x="{LEFT - 6}" y="{_num(sy(v) + 4)}" text-anchor="end">{_num(v)}</text>')

    # color bar
    bx, bw, steps = WIDTH - RIGHT + 20, 16, 50
    for k in range(steps):
        y = TOP + ph - (k + 1) * ph / steps
        out.append(f'<rect x="{bx}" y="{_num(y)}" width="{bw}" height="{_num(ph / steps)}" '
                   f'fill="{_color((k + 0.5) / steps)}"/>')
    out.append(f'<rect x="{bx}" y="{TOP}" width="{bw}" height="{ph}" fill="none" stroke="black"/>')
    out.append(f'<text x="{bx + bw + 4}" y="{TOP + ph + 4}">0</text>')
    out.append(f'<text x="{bx + bw + 4}" y="{TOP + 4}">{format_float(vmax)[:8]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def line_svg(records: Sequence[SweepRecord], fields: Sequence[str], theta_deg: float) -> str:
    """Traces of ``fields`` against T at one theta of the grid."""
    traces = []
    for f in fields:
        thetas, Ts, values = to_grid(records, f)
        hit = np.flatnonzero(thetas == theta_deg)
        if hit.size == 0:
            raise SchemaError(f"theta={theta_deg} deg is not on the grid {thetas.tolist()}")
        traces.append(values[hit[0]])
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    t0, t1 = (Ts[0], Ts[-1]) if Ts.size > 1 else (Ts[0] - 0.5, Ts[0] + 0.5)
    vmax = max(1.0, max(float(t.max()) for t in traces))
    sx = lambda v: LEFT + (v - t0) / (t1 - t0) * pw
    sy = lambda v: TOP + ph - v / vmax * ph

    out = _frame(f"{', '.join(fields)} at theta = {_num(theta_deg)} deg",
                 "T = a t (deg)", "value")
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for v in _ticks(Ts[0], Ts[-1]):
        out.append(f'<text x="{_num(sx(v))}" y="{TOP + ph + 16}" text-anchor="middle">{_num(v)}</text>')
    for v in _ticks(0.0, vmax):
        out.append(f'<text x="{LEFT - 6}" y="{_num(sy(v) + 4)}" text-anchor="end">{_num(v)}</text>')
    for k, (f, trace) in enumerate(zip(fields, traces)):
        color = _TRACE_COLORS[k % len(_TRACE_COLORS)]
        pts = " ".join(f"{_num(sx(t))},{_num(sy(v))}" for t, v in zip(Ts, trace))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = TOP + 16 * (k + 1)
        out.append(f'<line x1="{WIDTH - RIGHT + 10}" y1="{ly}" x2="{WIDTH - RIGHT + 30}" '
                   f'y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{WIDTH - RIGHT + 34}" y="{ly + 4}">{f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
