"""Minimal deterministic SVG line charts (no plotting dependencies)."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 64, 140, 24, 52
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
DEGENERATE_PAD = 0.05


def axis_range(values) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("non-finite data")
    if hi - lo <= 0.0:
        return lo - DEGENERATE_PAD, hi + DEGENERATE_PAD
    return lo, hi


def nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9)
    ticks = []
    k = first
    while k * step <= hi + 1e-9 * step:
        ticks.append(round(k * step, 12) + 0.0)
        k += 1
    return ticks


def _num(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return format(v, ".6g")


def render_svg_plot(series, x_label: str, y_label: str, sink, title: str | None = None) -> int:
    """Write an SVG 1.1 line chart; returns bytes written.

    ``series`` is a list of ``(label, ts, values)``; each needs at least two
    points. A flat axis is widened by +-0.05.
    """
    series = list(series)
    if not series:
        raise ValueError("need at least one series")
    for label, ts, vs in series:
        if len(ts) != len(vs) or len(ts) < 2:
            raise ValueError(f"series {label!r} needs >= 2 (t, value) points")
    x0, x1 = axis_range([float(t) for _, ts, _ in series for t in ts])
    y0, y1 = axis_range([float(v) for _, _, vs in series for v in vs])
    pw = WIDTH - LEFT - RIGHT
    ph = HEIGHT - TOP - BOTTOM

    def sx(t):
        return LEFT + (t - x0) / (x1 - x0) * pw

    def sy(v):
        return TOP + ph - (v - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.0f}" y="16" text-anchor="middle" font-size="13">{escape(title)}</text>')
    # axes
    out.append(f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>')
    for t in nice_ticks(x0, x1):
        px = _num(sx(t))
        out.append(f'<line x1="{px}" y1="{TOP + ph}" x2="{px}" y2="{TOP + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{px}" y="{TOP + ph + 16}" text-anchor="middle">{_tick_label(t)}</text>')
    for v in nice_ticks(y0, y1):
        py = _num(sy(v))
        out.append(f'<line x1="{LEFT - 4}" y1="{py}" x2="{LEFT}" y2="{py}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 7}" y="{py}" text-anchor="end" dominant-baseline="middle">{_tick_label(v)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.0f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(x_label)}</text>')
    out.append(
        f'<text x="16" y="{TOP + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {TOP + ph / 2:.0f})">{escape(y_label)}</text>'
    )
    for i, (label, ts, vs) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_num(sx(float(t)))},{_num(sy(float(v)))}" for t, v in zip(ts, vs))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
    # legend
    lx = LEFT + pw + 12
    for i, (label, _, _) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        ly = TOP + 10 + 18 * i
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly}" dominant-baseline="middle">{escape(str(label))}</text>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    sink.write(text)
    return len(text.encode("utf-8"))
