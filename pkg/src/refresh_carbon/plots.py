"""Standalone SVG renderings of carbon curves and sweep lines.

Output is deterministic: no timestamps, no randomness, byte-identical for
identical inputs. Curve plots draw one polyline per option plus a single
crossover marker when an indifference point exists (otherwise a textual
"no indifference point" annotation). Sweep plots draw one polyline with a
vertex per defined row; rows whose comparison failed or never crosses are
skipped.
"""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .lifecycle import CarbonCurve, SweepResult
from .model import _require

_MARGIN_LEFT = 72.0
_MARGIN_RIGHT = 24.0
_MARGIN_TOP = 36.0
_MARGIN_BOTTOM = 56.0
_COLORS = ("#1f77b4", "#d62728")
_TICKS = 5

__all__ = ["render_curves_svg", "render_sweep_svg"]


def _fmt(value: float) -> str:
    return format(value, "g")


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        # degenerate range; pad so the scale stays invertible
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    return lo, hi


class _Frame:
    """Maps data coordinates onto the pixel rectangle inside the margins."""

    def __init__(self, width: float, height: float, xs: Sequence[float], ys: Sequence[float]):
        self.width = width
        self.height = height
        self.x_lo, self.x_hi = _span(xs)
        self.y_lo, self.y_hi = _span(ys)
        self.px_left = _MARGIN_LEFT
        self.px_right = width - _MARGIN_RIGHT
        self.px_top = _MARGIN_TOP
        self.px_bottom = height - _MARGIN_BOTTOM

    def x(self, v: float) -> float:
        frac = (v - self.x_lo) / (self.x_hi - self.x_lo)
        return self.px_left + frac * (self.px_right - self.px_left)

    def y(self, v: float) -> float:
        frac = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return self.px_bottom - frac * (self.px_bottom - self.px_top)


def _ticks(lo: float, hi: float) -> list[float]:
    step = (hi - lo) / (_TICKS - 1)
    return [lo + i * step for i in range(_TICKS)]


def _axes(frame: _Frame, x_label: str, y_label: str) -> list[str]:
    parts = [
        f'<rect x="{frame.px_left}" y="{frame.px_top}" '
        f'width="{frame.px_right - frame.px_left}" height="{frame.px_bottom - frame.px_top}" '
        'fill="none" stroke="#333" stroke-width="1"/>'
    ]
    for tick in _ticks(frame.x_lo, frame.x_hi):
        px = frame.x(tick)
        parts.append(
            f'<line x1="{px:.2f}" y1="{frame.px_bottom}" x2="{px:.2f}" y2="{frame.px_bottom + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{frame.px_bottom + 20}" text-anchor="middle" font-size="12">{_fmt(tick)}</text>'
        )
    for tick in _ticks(frame.y_lo, frame.y_hi):
        py = frame.y(tick)
        parts.append(
            f'<line x1="{frame.px_left - 5}" y1="{py:.2f}" x2="{frame.px_left}" y2="{py:.2f}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{frame.px_left - 8}" y="{py + 4:.2f}" text-anchor="end" font-size="12">{_fmt(tick)}</text>'
        )
    mid_x = (frame.px_left + frame.px_right) / 2
    mid_y = (frame.px_top + frame.px_bottom) / 2
    parts.append(
        f'<text x="{mid_x:.2f}" y="{frame.height - 12}" text-anchor="middle" font-size="13">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{mid_y:.2f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {mid_y:.2f})">{escape(y_label)}</text>'
    )
    return parts


def _polyline(frame: _Frame, points: Sequence[tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{frame.x(t):.2f},{frame.y(v):.2f}" for t, v in points)
    return f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'


def _document(width: float, height: float, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">'
    )
    background = f'<rect x="0" y="0" width="{width:g}" height="{height:g}" fill="white"/>'
    return "\n".join([head, background, *body, "</svg>"]) + "\n"


def render_curves_svg(
    curves: Sequence[CarbonCurve],
    crossover: tuple[float, float] | None,
    width: float = 720.0,
    height: float = 480.0,
) -> str:
    """Cumulative-carbon curves with an optional indifference-point marker.

    crossover is the (years, kgCO2e) point where the curves meet, or None
    when they never do within the plotted span.
    """
    _require(len(curves) == 2, "comparison plot takes exactly two curves")
    xs = [t for curve in curves for t, _ in curve.samples]
    ys = [v for curve in curves for _, v in curve.samples]
    if crossover is not None:
        xs.append(crossover[0])
        ys.append(crossover[1])
    frame = _Frame(width, height, xs, ys)

    body = _axes(frame, "service time (years)", "cumulative carbon (kgCO2e)")
    for curve, color in zip(curves, _COLORS):
        body.append(_polyline(frame, curve.samples, color))
    for i, (curve, color) in enumerate(zip(curves, _COLORS)):
        y_px = _MARGIN_TOP + 16 + 18 * i
        body.append(
            f'<rect x="{frame.px_left + 10}" y="{y_px - 10}" width="12" height="12" fill="{color}"/>'
        )
        body.append(
            f'<text x="{frame.px_left + 28}" y="{y_px}" font-size="12">{escape(curve.option_label)}</text>'
        )
    if crossover is not None:
        cx, cy = frame.x(crossover[0]), frame.y(crossover[1])
        body.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="5" fill="#2ca02c" stroke="#145214"/>')
        body.append(
            f'<text x="{cx + 8:.2f}" y="{cy - 8:.2f}" font-size="12">'
            f"indifference at {_fmt(crossover[0])} y</text>"
        )
    else:
        body.append(
            f'<text x="{(frame.px_left + frame.px_right) / 2:.2f}" y="{_MARGIN_TOP + 16}" '
            'text-anchor="middle" font-size="13" fill="#a33">no indifference point</text>'
        )
    return _document(width, height, body)


def render_sweep_svg(
    sweep: SweepResult,
    width: float = 720.0,
    height: float = 480.0,
) -> str:
    """Indifference time against the swept parameter, one vertex per row."""
    points = [
        (row.value, row.t_indifference_years)
        for row in sweep.rows
        if row.t_indifference_years is not None
    ]
    if points:
        frame = _Frame(width, height, [p for p, _ in points], [v for _, v in points])
        body = _axes(frame, sweep.parameter_name, "indifference time (years)")
        body.append(_polyline(frame, points, _COLORS[0]))
    else:
        frame = _Frame(width, height, [0.0, 1.0], [0.0, 1.0])
        body = _axes(frame, sweep.parameter_name, "indifference time (years)")
        body.append(
            f'<text x="{(frame.px_left + frame.px_right) / 2:.2f}" y="{_MARGIN_TOP + 16}" '
            'text-anchor="middle" font-size="13" fill="#a33">no indifference point in range</text>'
        )
    return _document(width, height, body)
