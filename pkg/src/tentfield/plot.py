"""Static SVG figures: the graph of g_{p,I}^n (or T_{p^n}), the diagonal, the fixed points and
their orbits under one application of the map.

Output is byte-stable: coordinates are printed with six decimals and nothing time-dependent is
embedded, so repeated runs with the same inputs give identical files.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chebyshev import cheb_eval, cheb_fixed_points
from .dynamics import UpSet, fixed_points, increasing_set, orbit_partition, successor_indices
from .errors import InvalidArgumentError
from .ffield import require_positive, require_prime

log = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
DEFAULT_SIZE = 480
MARGIN = 40
_EPS = 1e-12

Point = tuple[float, float]

_STYLE = """
.axes { fill: none; stroke: #444444; stroke-width: 1; }
.diagonal { stroke: #999999; stroke-width: 1; stroke-dasharray: 4 3; }
.curve { fill: none; stroke: #1f4e99; stroke-width: 1.2; }
.fixed { stroke: #000000; stroke-width: 0.8; }
.up { fill: #d62728; }
.down { fill: #2ca02c; }
.orbit { fill: none; stroke: #7f3fbf; stroke-width: 0.9; marker-end: url(#arrow); }
"""


@dataclass(frozen=True)
class Marker:
    k: int
    x: float
    y: float
    increasing: bool


@dataclass(frozen=True)
class PlotSpec:
    title: str
    domain: tuple[float, float]
    curves: tuple[tuple[Point, ...], ...]
    markers: tuple[Marker, ...]
    arrows: tuple[tuple[Point, Point], ...] = ()
    width: int = DEFAULT_SIZE
    height: int = DEFAULT_SIZE
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        lo, hi = self.domain
        if not lo < hi:
            raise InvalidArgumentError(f"plot domain must satisfy lo < hi, got {self.domain}.")
        if self.width <= 2 * MARGIN or self.height <= 2 * MARGIN:
            raise InvalidArgumentError(f"canvas must exceed {2 * MARGIN}px in both directions.")
        points = [pt for curve in self.curves for pt in curve]
        points += [(m.x, m.y) for m in self.markers]
        points += [pt for arrow in self.arrows for pt in arrow]
        for x, y in points:
            if not (lo - _EPS <= x <= hi + _EPS and lo - _EPS <= y <= hi + _EPS):
                raise InvalidArgumentError(f"point ({x}, {y}) lies outside [{lo}, {hi}]^2.")


def _fmt(v: float) -> str:
    text = f"{v:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _map_segments(p: int, I: UpSet, n: int) -> tuple[tuple[Point, ...], ...]:
    # g^n is affine from 0 to 1 (or 1 to 0) on each [j/q, (j+1)/q]; runs are joined while continuous.
    q = p**n
    up = increasing_set(p, I, n)
    curves: list[list[Point]] = []
    for j in range(q):
        start = (j / q, 0.0 if j in up else 1.0)
        end = ((j + 1) / q, 1.0 if j in up else 0.0)
        if curves and curves[-1][-1] == start:
            curves[-1].append(end)
        else:
            curves.append([start, end])
    return tuple(tuple(c) for c in curves)


def _orbit_arrows(values: list[float], succ: list[int]) -> tuple[tuple[Point, Point], ...]:
    return tuple(
        ((values[k], values[k]), (values[j], values[j])) for k, j in enumerate(succ) if j != k
    )


def plot_spec_for_map(p: int, I: UpSet, n: int, *, size: int = DEFAULT_SIZE) -> PlotSpec:
    require_prime(p)
    require_positive(n, name="n")
    up = increasing_set(p, I, n)
    points: list[Fraction] = fixed_points(p, I, n)
    values = [float(x) for x in points]
    markers = tuple(Marker(k=k, x=v, y=v, increasing=k in up) for k, v in enumerate(values))
    succ = successor_indices(p, I, n)
    cycles = orbit_partition(p, I, n).length_counts()
    return PlotSpec(
        title=f"Fixed points of g_{{{p},{I.label}}}^{n} and their orbits",
        domain=(0.0, 1.0),
        curves=_map_segments(p, I, n),
        markers=markers,
        arrows=_orbit_arrows(values, succ),
        width=size,
        height=size,
        meta={"kind": "map", "p": str(p), "n": str(n), "I": I.label, "cycles": str(cycles)},
    )


def plot_spec_for_chebyshev(p: int, n: int, *, samples: int = 1000, size: int = DEFAULT_SIZE) -> PlotSpec:
    require_prime(p)
    require_positive(n, name="n")
    require_positive(samples, name="samples")
    evens = UpSet.evens(p)
    xs = np.linspace(-1.0, 1.0, max(samples, 2))
    ys = xs
    for _ in range(n):
        ys = cheb_eval(p, ys)
    ys = np.clip(ys, -1.0, 1.0)
    curve = tuple((float(x), float(y)) for x, y in zip(xs, ys))
    up = increasing_set(p, evens, n)
    points = cheb_fixed_points(p, n)
    values = [pt.value for pt in points]
    markers = tuple(Marker(k=pt.k, x=pt.value, y=pt.value, increasing=pt.k in up) for pt in points)
    succ = successor_indices(p, evens, n)
    return PlotSpec(
        title=f"Fixed points of T_{p**n} and their orbits under T_{p}",
        domain=(-1.0, 1.0),
        curves=(curve,),
        markers=markers,
        arrows=_orbit_arrows(values, succ),
        width=size,
        height=size,
        meta={"kind": "cheb", "p": str(p), "n": str(n)},
    )


class _Canvas:
    def __init__(self, spec: PlotSpec) -> None:
        self.lo, self.hi = spec.domain
        self.w = spec.width - 2 * MARGIN
        self.h = spec.height - 2 * MARGIN
        self.height = spec.height

    def sx(self, x: float) -> float:
        return MARGIN + (x - self.lo) / (self.hi - self.lo) * self.w

    def sy(self, y: float) -> float:
        return self.height - MARGIN - (y - self.lo) / (self.hi - self.lo) * self.h

    def pt(self, p: Point) -> str:
        return f"{_fmt(self.sx(p[0]))},{_fmt(self.sy(p[1]))}"


def _chord(canvas: _Canvas, a: Point, b: Point) -> str:
    x1, y1 = canvas.sx(a[0]), canvas.sy(a[1])
    x2, y2 = canvas.sx(b[0]), canvas.sy(b[1])
    # control point sits to the left of the direction of travel
    mx, my = (x1 + x2) / 2, (y1 + y2) / 2
    dx, dy = x2 - x1, y2 - y1
    cx, cy = mx - 0.25 * dy, my + 0.25 * dx
    return f"M {_fmt(x1)},{_fmt(y1)} Q {_fmt(cx)},{_fmt(cy)} {_fmt(x2)},{_fmt(y2)}"


def emit_plot(spec: PlotSpec) -> str:
    canvas = _Canvas(spec)
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": str(spec.width),
            "height": str(spec.height),
            "viewBox": f"0 0 {spec.width} {spec.height}",
        },
    )
    ET.SubElement(root, "title").text = spec.title
    if spec.meta:
        meta = ET.SubElement(root, "desc")
        meta.text = "; ".join(f"{k}={v}" for k, v in sorted(spec.meta.items()))

    defs = ET.SubElement(root, "defs")
    marker = ET.SubElement(
        defs,
        "marker",
        {
            "id": "arrow",
            "viewBox": "0 0 10 10",
            "refX": "9",
            "refY": "5",
            "markerWidth": "6",
            "markerHeight": "6",
            "orient": "auto-start-reverse",
        },
    )
    ET.SubElement(marker, "path", {"d": "M 0 0 L 10 5 L 0 10 z", "fill": "#7f3fbf"})
    ET.SubElement(root, "style").text = _STYLE

    lo, hi = spec.domain
    ET.SubElement(
        root,
        "rect",
        {
            "class": "axes",
            "x": _fmt(canvas.sx(lo)),
            "y": _fmt(canvas.sy(hi)),
            "width": _fmt(float(canvas.w)),
            "height": _fmt(float(canvas.h)),
        },
    )
    ET.SubElement(
        root,
        "line",
        {
            "class": "diagonal",
            "x1": _fmt(canvas.sx(lo)),
            "y1": _fmt(canvas.sy(lo)),
            "x2": _fmt(canvas.sx(hi)),
            "y2": _fmt(canvas.sy(hi)),
        },
    )

    curves = ET.SubElement(root, "g", {"id": "curve"})
    for curve in spec.curves:
        ET.SubElement(curves, "polyline", {"class": "curve", "points": " ".join(canvas.pt(p) for p in curve)})

    arrows = ET.SubElement(root, "g", {"id": "orbits"})
    for a, b in spec.arrows:
        ET.SubElement(arrows, "path", {"class": "orbit", "d": _chord(canvas, a, b)})

    markers = ET.SubElement(root, "g", {"id": "fixed-points"})
    for m in spec.markers:
        ET.SubElement(
            markers,
            "circle",
            {
                "class": "fixed up" if m.increasing else "fixed down",
                "data-k": str(m.k),
                "cx": _fmt(canvas.sx(m.x)),
                "cy": _fmt(canvas.sy(m.y)),
                "r": "3",
            },
        )

    ET.indent(root)
    log.debug("emitting SVG with %s markers and %s orbit chords", len(spec.markers), len(spec.arrows))
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
