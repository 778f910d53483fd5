"""Small SVG emitter for curve figures.

Shapes are collected in model coordinates (mathematical orientation, y up)
and written inside a single group carrying an explicit y-flip transform, so
the rendered image matches the geometry without touching any coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

__all__ = ["SvgFigure"]


def _fmt(x: float) -> str:
    s = "%.8g" % float(x)
    return "0" if s == "-0" else s


@dataclass
class SvgFigure:
    """Collects polylines, points and circles; writes one SVG file."""

    width_px: int = 640
    _shapes: List[tuple] = field(default_factory=list)
    _bbox: List[float] = field(default_factory=lambda: [math.inf, math.inf,
                                                        -math.inf, -math.inf])

    def _grow(self, xs, ys) -> None:
        b = self._bbox
        b[0] = min(b[0], float(np.min(xs)))
        b[1] = min(b[1], float(np.min(ys)))
        b[2] = max(b[2], float(np.max(xs)))
        b[3] = max(b[3], float(np.max(ys)))

    def add_polyline(self, pts, color: str = "black", width: float = 0.0,
                     dashed: bool = False, closed: bool = False) -> None:
        """pts: (N, 2) array or complex array."""
        pts = np.asarray(pts)
        if pts.dtype.kind == "c":
            pts = np.column_stack([pts.real, pts.imag])
        if len(pts) < 2:
            return
        self._grow(pts[:, 0], pts[:, 1])
        self._shapes.append(("polyline", pts, color, width, dashed, closed))

    def add_points(self, pts, color: str = "crimson",
                   radius: float = 0.0) -> None:
        pts = np.asarray(pts)
        if pts.dtype.kind == "c":
            pts = np.column_stack([pts.real, pts.imag])
        if len(pts) == 0:
            return
        self._grow(pts[:, 0], pts[:, 1])
        self._shapes.append(("points", pts, color, radius))

    def add_circle(self, center, radius: float, color: str = "gray",
                   width: float = 0.0, dashed: bool = True) -> None:
        cx, cy = ((center.real, center.imag) if isinstance(center, complex)
                  else (center[0], center[1]))
        self._grow(np.array([cx - radius, cx + radius]),
                   np.array([cy - radius, cy + radius]))
        self._shapes.append(("circle", (cx, cy, radius), color, width,
                             dashed))

    def add_label(self, text: str, at, size: float = 0.0) -> None:
        x, y = ((at.real, at.imag) if isinstance(at, complex)
                else (at[0], at[1]))
        self._grow(np.array([x]), np.array([y]))
        self._shapes.append(("label", (x, y, str(text)), size))

    # ------------------------------------------------------------------

    def _scales(self) -> Tuple[float, float, float, float, float]:
        x0, y0, x1, y1 = self._bbox
        if not all(map(math.isfinite, self._bbox)):
            x0 = y0 = -1.0
            x1 = y1 = 1.0
        span = max(x1 - x0, y1 - y0, 1e-12)
        pad = 0.05 * span
        return x0 - pad, y0 - pad, x1 + pad, y1 + pad, span

    def tostring(self) -> str:
        x0, y0, x1, y1, span = self._scales()
        w, h = x1 - x0, y1 - y0
        stroke = 0.0035 * span
        dot = 0.006 * span
        # y-up: flip the whole group, so the viewBox minimum y is -y_max
        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{self.width_px}" '
            f'height="{max(1, round(self.width_px * h / w))}" '
            f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(h)}">',
            '<g transform="scale(1 -1)">',
        ]
        for shape in self._shapes:
            kind = shape[0]
            if kind == "polyline":
                _, pts, color, width, dashed, closed = shape
                d = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
                tag = "polygon" if closed else "polyline"
                sw = width if width > 0.0 else stroke
                dash = (f' stroke-dasharray="{_fmt(4 * sw)} {_fmt(3 * sw)}"'
                        if dashed else "")
                out.append(
                    f'<{tag} points="{d}" fill="none" stroke="{color}" '
                    f'stroke-width="{_fmt(sw)}"{dash}/>')
            elif kind == "points":
                _, pts, color, radius = shape
                r = radius if radius > 0.0 else dot
                for x, y in pts:
                    out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" '
                               f'r="{_fmt(r)}" fill="{color}"/>')
            elif kind == "circle":
                _, (cx, cy, r), color, width, dashed = shape
                sw = width if width > 0.0 else stroke
                dash = (f' stroke-dasharray="{_fmt(4 * sw)} {_fmt(3 * sw)}"'
                        if dashed else "")
                out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                           f'r="{_fmt(r)}" fill="none" stroke="{color}" '
                           f'stroke-width="{_fmt(sw)}"{dash}/>')
            elif kind == "label":
                _, (x, y, text), size = shape
                fs = size if size > 0.0 else 0.04 * span
                # text is drawn un-flipped so it stays readable
                out.append(f'<text x="{_fmt(x)}" y="{_fmt(-y)}" '
                           f'font-size="{_fmt(fs)}" '
                           'transform="scale(1 -1)">'
                           f'{text}</text>')
        out.append("</g>")
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.tostring())
