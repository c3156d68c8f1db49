"""Minimal static SVG plots, written by hand so no plotting stack is needed."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

SIZE = 800
MARGIN = 70


def _nice_ticks(lo: float, hi: float, count: int = 5):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    ticks = []
    v = start
    while v <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(v) < step * 1e-9 else v)
        v += step
    return ticks


def boundary_svg(points: Sequence[complex], title: str = "") -> str:
    """Closed boundary polygon on equal-aspect axes."""
    pts = np.asarray(points, dtype=complex)
    xs, ys = pts.real, pts.imag
    cx, cy = (xs.max() + xs.min()) / 2, (ys.max() + ys.min()) / 2
    half = max(xs.max() - xs.min(), ys.max() - ys.min()) / 2
    half = half * 1.1 if half > 0 else max(abs(cx), abs(cy), 1.0) * 0.1
    lo_x, hi_x, lo_y, hi_y = cx - half, cx + half, cy - half, cy + half
    inner = SIZE - 2 * MARGIN

    def px(x):
        return MARGIN + (x - lo_x) / (hi_x - lo_x) * inner

    def py(y):
        return SIZE - MARGIN - (y - lo_y) / (hi_y - lo_y) * inner

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="black"/>',
    ]
    for t in _nice_ticks(lo_x, hi_x):
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{SIZE - MARGIN}" x2="{x:.2f}" y2="{SIZE - MARGIN + 6}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{SIZE - MARGIN + 22}" font-size="13" '
                   f'text-anchor="middle">{t:.4g}</text>')
    for t in _nice_ticks(lo_y, hi_y):
        y = py(t)
        out.append(f'<line x1="{MARGIN - 6}" y1="{y:.2f}" x2="{MARGIN}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN - 10}" y="{y + 4:.2f}" font-size="13" '
                   f'text-anchor="end">{t:.4g}</text>')
    poly = " ".join(f"{px(x):.3f},{py(y):.3f}" for x, y in zip(xs, ys))
    out.append(f'<polygon points="{poly}" fill="#cfe2f3" stroke="#1f4e79" stroke-width="1.5"/>')
    out.append(f'<text x="{SIZE / 2}" y="{SIZE - 15}" font-size="15" text-anchor="middle">Re</text>')
    out.append(f'<text x="20" y="{SIZE / 2}" font-size="15" text-anchor="middle">Im</text>')
    if title:
        out.append(f'<text x="{SIZE / 2}" y="35" font-size="17" text-anchor="middle">{title}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
