"""Minimal SVG scatter of ln(fraction) against size, with an optional fitted line."""

from __future__ import annotations

import math
import os
import warnings
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .stats import FitResult, FractionPoint, Model

WIDTH, HEIGHT = 640, 440
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 30, 60


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def emit_plot(
    points: Sequence[FractionPoint],
    fit: Optional[FitResult],
    path: os.PathLike,
    title: str = "",
) -> None:
    plotted = []
    for p in points:
        if p.fraction is not None and p.fraction > 0:
            plotted.append((p.size, math.log(p.fraction)))
        else:
            warnings.warn(f"size {p.size}: zero fraction omitted from plot", stacklevel=2)
    if not plotted:
        raise ValueError("no plottable points (all fractions are zero)")
    if fit is not None:
        if len(plotted) < 2:
            raise ValueError("a fitted line needs at least 2 plotted points")
        if fit.model is not Model.EXPONENTIAL_FRACTION:
            raise ValueError("only exponential fraction fits can be drawn on a log-fraction plot")

    xs = [x for x, _ in plotted]
    ys = [y for _, y in plotted]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    if y0 == y1:
        y0, y1 = y0 - 1, y1 + 1
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def px(x: float) -> float:
        return LEFT + (x - x0) / (x1 - x0) * (WIDTH - LEFT - RIGHT)

    def py(y: float) -> float:
        return TOP + (y1 - y) / (y1 - y0) * (HEIGHT - TOP - BOTTOM)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="18" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    bx, by = LEFT, HEIGHT - BOTTOM
    out.append(f'<line class="axis" x1="{bx}" y1="{by}" x2="{WIDTH - RIGHT}" y2="{by}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{bx}" y1="{TOP}" x2="{bx}" y2="{by}" stroke="black"/>')
    for t in _ticks(x0, x1):
        out.append(f'<text x="{px(t):.2f}" y="{by + 18}" text-anchor="middle" font-size="11">{t:g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{bx - 6}" y="{py(t) + 4:.2f}" text-anchor="end" font-size="11">{t:.2f}</text>')
    out.append(f'<text class="xlabel" x="{(LEFT + WIDTH - RIGHT) / 2:.2f}" y="{HEIGHT - 15}" '
               f'text-anchor="middle" font-size="13">size n</text>')
    out.append(f'<text class="ylabel" x="18" y="{(TOP + HEIGHT - BOTTOM) / 2:.2f}" text-anchor="middle" '
               f'font-size="13" transform="rotate(-90 18 {(TOP + HEIGHT - BOTTOM) / 2:.2f})">'
               f'ln(fraction)</text>')
    if fit is not None:
        fx0, fx1 = min(xs), max(xs)
        fy0 = math.log(fit.scale) + fx0 * math.log(fit.ratio)
        fy1 = math.log(fit.scale) + fx1 * math.log(fit.ratio)
        out.append(f'<line class="fit" x1="{px(fx0):.3f}" y1="{py(fy0):.3f}" x2="{px(fx1):.3f}" '
                   f'y2="{py(fy1):.3f}" stroke="crimson" stroke-width="1.5"/>')
    for x, y in plotted:
        out.append(f'<circle class="point" cx="{px(x):.3f}" cy="{py(y):.3f}" r="3.5" fill="steelblue"/>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
