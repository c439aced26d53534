"""Deterministic SVG rendering of arrangements in the affine chart z = 1.

Clipping is exact: boundary intersections are computed in Q(sqrt(3)) and
compared with the field's total order; floats appear only in the final
coordinate formatting, so output bytes are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .arrangement import Arrangement
from .field import FieldElement

Window = Tuple[Fraction, Fraction, Fraction, Fraction]

_PLOT_SIZE = 720.0
_MARGIN = 40.0
_WIDTH = 800.0
_HEIGHT = 840.0


def _coerce_window(window: Sequence) -> Tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
    if len(window) != 4:
        raise ValueError("window must be (xmin, xmax, ymin, ymax)")
    vals = []
    for w in window:
        vals.append(w if isinstance(w, FieldElement) else FieldElement(Fraction(w)))
    xmin, xmax, ymin, ymax = vals
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("degenerate window: need xmin < xmax and ymin < ymax")
    return xmin, xmax, ymin, ymax


def _clip_line(a: FieldElement, b: FieldElement, c: FieldElement,
               xmin: FieldElement, xmax: FieldElement,
               ymin: FieldElement, ymax: FieldElement,
               ) -> Optional[Tuple[Tuple[FieldElement, FieldElement], Tuple[FieldElement, FieldElement]]]:
    """Intersection segment of a*x + b*y + c = 0 with the window, or None."""
    hits: List[Tuple[FieldElement, FieldElement]] = []
    if b:
        for xv in (xmin, xmax):
            y = -(a * xv + c) / b
            if ymin <= y <= ymax:
                hits.append((xv, y))
    if a:
        for yv in (ymin, ymax):
            x = -(b * yv + c) / a
            if xmin <= x <= xmax:
                hits.append((x, yv))
    unique: List[Tuple[FieldElement, FieldElement]] = []
    for pt in hits:
        if pt not in unique:
            unique.append(pt)
    if len(unique) < 2:
        return None
    unique.sort()
    return unique[0], unique[-1]


def render_svg(arrangement: Arrangement, window: Sequence) -> bytes:
    """One SVG path per line crossing the window; infinity lines go to a
    legend annotated with the symbol for the line at infinity."""
    xmin, xmax, ymin, ymax = _coerce_window(window)
    span_x = float(xmax - xmin)
    span_y = float(ymax - ymin)

    def sx(x: FieldElement) -> float:
        return _MARGIN + float(x - xmin) / span_x * _PLOT_SIZE

    def sy(y: FieldElement) -> float:
        return _MARGIN + float(ymax - y) / span_y * _PLOT_SIZE

    paths: List[str] = []
    infinity_labels: List[str] = []
    for idx, line in enumerate(arrangement.lines):
        label = arrangement.labels[idx]
        a, b, c = line.coords
        if not a and not b:
            infinity_labels.append(label)
            continue
        segment = _clip_line(a, b, c, xmin, xmax, ymin, ymax)
        if segment is None:
            continue
        (x1, y1), (x2, y2) = segment
        paths.append(
            f'<path id="{label}" d="M {sx(x1):.4f} {sy(y1):.4f} L {sx(x2):.4f} {sy(y2):.4f}" '
            f'stroke="#1f3a5f" stroke-width="1.5" fill="none"/>'
        )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" height="{_HEIGHT:.0f}" '
        f'viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">',
        f'<rect x="0" y="0" width="{_WIDTH:.0f}" height="{_HEIGHT:.0f}" fill="#ffffff"/>',
        f'<rect x="{_MARGIN:.0f}" y="{_MARGIN:.0f}" width="{_PLOT_SIZE:.0f}" height="{_PLOT_SIZE:.0f}" '
        f'fill="none" stroke="#888888" stroke-width="1"/>',
    ]
    parts.extend(paths)
    if infinity_labels:
        names = ", ".join(infinity_labels)
        parts.append(
            f'<text x="{_MARGIN:.0f}" y="{_MARGIN + _PLOT_SIZE + 40.0:.1f}" '
            f'font-family="monospace" font-size="16">∞: {names}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def drawn_segment_count(svg: bytes) -> int:
    """Number of clipped line segments in a rendered document."""
    return svg.count(b"<path ")
