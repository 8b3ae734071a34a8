"""Device-to-map calibration and tolerance-based hit-testing.

A three-point affine registration maps device (touch) coordinates into map
coordinates.  Hit-testing then finds the nearest map element within a
per-kind tolerance: point features match within a radius, linear features
within half a stroke width, and area features match anywhere inside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .mapmodel import Geometry, MapDocument, Point, Polygon, Polyline

XY = tuple[float, float]

# Ties closer than this are resolved by kind priority, then id.
TIE_EPSILON = 1e-9

_KIND_PRIORITY = {"poi": 0, "street": 1, "river": 2}


class DegenerateCalibration(ValueError):
    """Raised when calibration points do not determine an invertible affine."""


@dataclass(frozen=True)
class Calibration:
    """Affine map_x = a*x + b*y + c, map_y = d*x + e*y + f."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self) -> None:
        if abs(self.a * self.e - self.b * self.d) <= 1e-9:
            raise DegenerateCalibration("linear part is not invertible")


IDENTITY = Calibration(1.0, 0.0, 0.0, 0.0, 1.0, 0.0)


@dataclass(frozen=True)
class HitTolerances:
    """Per-kind selection distances, in map units."""

    street_halfwidth: float = 5.0
    poi_radius: float = 8.0
    river_halfwidth: float = 5.0

    def __post_init__(self) -> None:
        for field in ("street_halfwidth", "poi_radius", "river_halfwidth"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{field} must be strictly positive")

    def for_kind(self, kind: str) -> float:
        return {
            "street": self.street_halfwidth,
            "poi": self.poi_radius,
            "river": self.river_halfwidth,
        }[kind]


@dataclass(frozen=True)
class HitResult:
    element_id: str
    kind: str
    distance: float


def fit_calibration(pairs: Sequence[tuple[XY, XY]]) -> Calibration:
    """Fit the affine taking each device point onto its paired map point.

    Exactly three pairs are required; the device points must be
    non-collinear or DegenerateCalibration is raised.
    """
    if len(pairs) != 3:
        raise ValueError("calibration needs exactly 3 point pairs")
    (d0, m0), (d1, m1), (d2, m2) = pairs
    # Shared coefficient matrix [[x, y, 1]] for both coordinate rows.
    det = _det3(d0[0], d0[1], 1.0, d1[0], d1[1], 1.0, d2[0], d2[1], 1.0)
    if abs(det) < 1e-9:
        raise DegenerateCalibration("device points are collinear or coincide")
    a, b, c = _cramer3(d0, d1, d2, (m0[0], m1[0], m2[0]), det)
    d, e, f = _cramer3(d0, d1, d2, (m0[1], m1[1], m2[1]), det)
    cal = Calibration(a, b, c, d, e, f)
    for dev, mapped in pairs:
        got = to_map(cal, dev)
        if math.hypot(got[0] - mapped[0], got[1] - mapped[1]) > 1e-6:
            raise DegenerateCalibration("calibration residual exceeds 1e-6")
    return cal


def _det3(
    a: float, b: float, c: float,
    d: float, e: float, f: float,
    g: float, h: float, i: float,
) -> float:
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _cramer3(d0: XY, d1: XY, d2: XY, rhs: tuple[float, float, float], det: float) -> tuple[float, float, float]:
    r0, r1, r2 = rhs
    na = _det3(r0, d0[1], 1.0, r1, d1[1], 1.0, r2, d2[1], 1.0)
    nb = _det3(d0[0], r0, 1.0, d1[0], r1, 1.0, d2[0], r2, 1.0)
    nc = _det3(d0[0], d0[1], r0, d1[0], d1[1], r1, d2[0], d2[1], r2)
    return na / det, nb / det, nc / det


def to_map(cal: Calibration, p: XY) -> XY:
    """Apply the calibration affine to a device point."""
    x, y = p
    return (cal.a * x + cal.b * y + cal.c, cal.d * x + cal.e * y + cal.f)


def distance_point_segmentchain(p: XY, g: Geometry) -> float:
    """Distance from p to a geometry; 0 inside a polygon (even-odd rule)."""
    if isinstance(g, Point):
        return math.hypot(p[0] - g.x, p[1] - g.y)
    if isinstance(g, Polyline):
        return _chain_distance(p, g.vertices, close=False)
    if isinstance(g, Polygon):
        if _even_odd_inside(p, g.vertices):
            return 0.0
        return _chain_distance(p, g.vertices, close=True)
    raise TypeError(f"unsupported geometry: {type(g).__name__}")


def _chain_distance(p: XY, vertices: Sequence[XY], close: bool) -> float:
    if len(vertices) == 1:
        return math.hypot(p[0] - vertices[0][0], p[1] - vertices[0][1])
    best = math.inf
    n = len(vertices)
    last = n if close else n - 1
    for i in range(last):
        best = min(best, _segment_distance(p, vertices[i], vertices[(i + 1) % n]))
    return best


def _segment_distance(p: XY, a: XY, b: XY) -> float:
    ax, ay = a
    bx, by = b
    vx, vy = bx - ax, by - ay
    wx, wy = p[0] - ax, p[1] - ay
    seg_len2 = vx * vx + vy * vy
    if seg_len2 == 0.0:
        return math.hypot(wx, wy)
    # Clamp the projection parameter onto [0, 1].
    t = max(0.0, min(1.0, (wx * vx + wy * vy) / seg_len2))
    return math.hypot(wx - t * vx, wy - t * vy)


def _even_odd_inside(p: XY, vertices: Sequence[XY]) -> bool:
    x, y = p
    inside = False
    n = len(vertices)
    for i in range(n):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % n]
        if (ay > y) != (by > y):
            cross_x = ax + (y - ay) * (bx - ax) / (by - ay)
            if x < cross_x:
                inside = not inside
    return inside


def hit_test(doc: MapDocument, p: XY, tol: HitTolerances) -> Optional[HitResult]:
    """Select the element nearest to p within its kind's tolerance.

    The frame never matches.  Ties within TIE_EPSILON go to the higher
    kind priority (poi over street over river), then the smaller id.
    """
    eligible: list[tuple[float, int, str, str]] = []
    for el in doc.elements:
        if el.kind == "frame":
            continue
        d = distance_point_segmentchain(p, el.geometry)
        if d <= tol.for_kind(el.kind):
            eligible.append((d, _KIND_PRIORITY[el.kind], el.id, el.kind))
    if not eligible:
        return None
    dmin = min(e[0] for e in eligible)
    tied = [e for e in eligible if e[0] <= dmin + TIE_EPSILON]
    d, _, element_id, kind = min(tied, key=lambda e: (e[1], e[2]))
    return HitResult(element_id=element_id, kind=kind, distance=d)
