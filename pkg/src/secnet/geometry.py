"""Geometry of the deployment region: unit torus and unit square.

Sensors live in [0, 1]^2.  On the torus, distances wrap; on the square,
a sensor's communication disk is clipped by the boundary, which is what
drives the different connectivity thresholds of the two regions.
"""

from __future__ import annotations

import math
from enum import Enum

__all__ = [
    "Region",
    "Point",
    "SquareZone",
    "distance",
    "clipped_disk_area",
    "boundary_area_H",
    "lens_area",
    "classify_square_zone",
    "square_zone_areas",
]

Point = tuple[float, float]


class Region(Enum):
    """Deployment region: unit torus (wrapping) or unit square (clipping)."""

    TORUS = "torus"
    SQUARE = "square"


class SquareZone(Enum):
    """Partition of the unit square by proximity of a disk center to the boundary.

    INTERIOR:   every edge farther than r.
    NEAR_BAND:  exactly one edge within r, at distance <= r/2.
    FAR_BAND:   exactly one edge within r, at distance in (r/2, r].
    CORNER:     two edges within r.
    """

    INTERIOR = "interior"
    NEAR_BAND = "near_band"
    FAR_BAND = "far_band"
    CORNER = "corner"


def _check_point(p: Point) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"point {p!r} lies outside the unit square")
    return x, y


def _check_radius(r: float) -> float:
    r = float(r)
    if not 0.0 < r < 0.5:
        raise ValueError(f"radius must lie in (0, 0.5), got {r}")
    return r


def distance(region: Region, a: Point, b: Point) -> float:
    """Distance between two points: Euclidean on the square, wrapped on the torus.

    The torus metric is the minimum Euclidean distance over the nine integer
    translates of b.
    """
    ax, ay = _check_point(a)
    bx, by = _check_point(b)
    if region is Region.SQUARE:
        return math.hypot(ax - bx, ay - by)
    best = math.inf
    for sx in (-1.0, 0.0, 1.0):
        for sy in (-1.0, 0.0, 1.0):
            d = math.hypot(ax - bx + sx, ay - by + sy)
            if d < best:
                best = d
    return best


def _circular_segment(d: float, r: float) -> float:
    """Area of the part of a radius-r disk beyond a chord at distance d from center."""
    if d >= r:
        return 0.0
    return r * r * math.acos(d / r) - d * math.sqrt(r * r - d * d)


def _corner_cut(a: float, b: float, r: float) -> float:
    """Area of a radius-r disk (center at origin) in the quadrant {x > a, y > b}.

    a, b >= 0 are the distances from the disk center to two perpendicular
    edges; nonzero only when the corner (a, b) falls inside the disk.
    """
    if a * a + b * b >= r * r:
        return 0.0
    x1 = math.sqrt(r * r - b * b)
    return (
        0.5 * r * r * (math.asin(x1 / r) - math.asin(a / r))
        - 0.5 * b * x1
        - 0.5 * a * math.sqrt(r * r - a * a)
        + a * b
    )


def _disk_box_area(center: Point, r: float) -> float:
    """Exact area of a radius-r disk centered inside [0,1]^2, clipped to the box.

    Inclusion-exclusion over the four half-planes outside the box.  Opposite
    half-planes are disjoint, so only the four corner terms enter at second
    order and nothing at third; valid for any r > 0.
    """
    cx, cy = center
    dists = (cx, 1.0 - cx, cy, 1.0 - cy)
    area = math.pi * r * r
    for d in dists:
        area -= _circular_segment(d, r)
    for a in (cx, 1.0 - cx):
        for b in (cy, 1.0 - cy):
            area += _corner_cut(a, b, r)
    return area


def clipped_disk_area(region: Region, center: Point, r: float) -> float:
    """Area of the radius-r communication disk around center, within the region.

    On the torus this is always pi r^2 (no boundary); on the square the disk
    is clipped by up to two adjacent edges.
    """
    center = _check_point(center)
    r = _check_radius(r)
    if region is Region.TORUS:
        return math.pi * r * r
    return _disk_box_area(center, r)


def boundary_area_H(g: float, r: float) -> tuple[float, float, float]:
    """Visible disk area H(g) for a center at distance g from one straight edge.

    For g in [0, r/2] (deep in the one-edge band) the clipped area is
    H(g) = (pi - arccos(g/r)) r^2 + g sqrt(r^2 - g^2).  Returns the triple
    (H, H', H''); H' = 2 sqrt(r^2 - g^2) and H'' = -2g / sqrt(r^2 - g^2),
    so H is increasing and concave on the band.
    """
    r = _check_radius(r)
    g = float(g)
    if not 0.0 <= g <= r / 2.0:
        raise ValueError(f"edge distance must lie in [0, r/2], got g={g}, r={r}")
    root = math.sqrt(r * r - g * g)
    h = (math.pi - math.acos(g / r)) * r * r + g * root
    dh = 2.0 * root
    d2h = -2.0 * g / root
    return h, dh, d2h


def lens_area(d: float, r: float) -> float:
    """Overlap area of two radius-r disks at center distance d.

    Zero when d >= 2r; otherwise the standard symmetric lens
    2 r^2 arccos(d / 2r) - (d/2) sqrt(4 r^2 - d^2).
    """
    d = float(d)
    r = float(r)
    if d < 0.0:
        raise ValueError(f"distance must be >= 0, got {d}")
    if not 0.0 < r < math.inf:
        raise ValueError(f"radius must be positive and finite, got {r}")
    if d >= 2.0 * r:
        return 0.0
    return 2.0 * r * r * math.acos(d / (2.0 * r)) - 0.5 * d * math.sqrt(4.0 * r * r - d * d)


def classify_square_zone(center: Point, r: float) -> SquareZone:
    """Zone of the unit square that a disk center falls in, for disk radius r.

    Ties go to the nearer-boundary zone (boundaries use <=).
    """
    cx, cy = _check_point(center)
    r = _check_radius(r)
    dx = min(cx, 1.0 - cx)
    dy = min(cy, 1.0 - cy)
    if dx > r and dy > r:
        return SquareZone.INTERIOR
    if dx <= r and dy <= r:
        return SquareZone.CORNER
    g = min(dx, dy)
    return SquareZone.NEAR_BAND if g <= r / 2.0 else SquareZone.FAR_BAND


def square_zone_areas(r: float) -> dict[SquareZone, float]:
    """Lebesgue measure of each square zone; the four values sum to 1."""
    r = _check_radius(r)
    side = 1.0 - 2.0 * r
    return {
        SquareZone.INTERIOR: side * side,
        SquareZone.NEAR_BAND: 4.0 * side * (r / 2.0),
        SquareZone.FAR_BAND: 4.0 * side * (r / 2.0),
        SquareZone.CORNER: 4.0 * r * r,
    }
