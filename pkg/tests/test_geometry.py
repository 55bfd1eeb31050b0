"""Tests for torus/square geometry primitives.

Oracles: Monte Carlo area estimates and central finite differences, plus a
few closed-form anchor values (quarter disk at a corner, half disk on an
edge, the equilateral two-disk lens).
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reference import fold_displacement, mc_disk_area, mc_lens_area
from secnet import (
    Region,
    SquareZone,
    boundary_area_H,
    classify_square_zone,
    clipped_disk_area,
    distance,
    lens_area,
    square_zone_areas,
)

coords = st.floats(0.0, 1.0, allow_nan=False)
radii = st.floats(0.005, 0.499, allow_nan=False)


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def test_distance_examples():
    assert distance(Region.SQUARE, (0.05, 0.5), (0.95, 0.5)) == pytest.approx(0.9)
    assert distance(Region.TORUS, (0.05, 0.5), (0.95, 0.5)) == pytest.approx(0.1)
    assert distance(Region.TORUS, (0.02, 0.03), (0.98, 0.97)) == pytest.approx(
        math.hypot(0.04, 0.06)
    )
    assert distance(Region.TORUS, (0.25, 0.25), (0.5, 0.5)) == pytest.approx(
        math.hypot(0.25, 0.25)
    )


@given(coords, coords, coords, coords)
def test_torus_distance_matches_fold(ax, ay, bx, by):
    got = distance(Region.TORUS, (ax, ay), (bx, by))
    dx, dy = fold_displacement(np.array([ax - bx, ay - by]))
    assert got == pytest.approx(math.hypot(dx, dy), abs=1e-12)
    assert got <= math.sqrt(0.5) + 1e-12


@given(coords, coords, coords, coords)
def test_square_distance_is_euclidean(ax, ay, bx, by):
    assert distance(Region.SQUARE, (ax, ay), (bx, by)) == math.dist((ax, ay), (bx, by))


@given(coords, coords, coords, coords)
def test_distance_symmetry(ax, ay, bx, by):
    for region in Region:
        assert distance(region, (ax, ay), (bx, by)) == distance(region, (bx, by), (ax, ay))


def test_distance_rejects_points_outside_unit_square():
    with pytest.raises(ValueError):
        distance(Region.TORUS, (1.2, 0.5), (0.5, 0.5))
    with pytest.raises(ValueError):
        distance(Region.SQUARE, (0.5, 0.5), (0.5, -0.01))


# ---------------------------------------------------------------------------
# clipped disk areas
# ---------------------------------------------------------------------------


def test_clipped_area_closed_form_anchors():
    r = 0.17
    full = math.pi * r * r
    # interior of the square and anywhere on the torus: no clipping
    assert clipped_disk_area(Region.SQUARE, (0.5, 0.5), r) == pytest.approx(full, rel=1e-14)
    assert clipped_disk_area(Region.TORUS, (0.01, 0.99), r) == pytest.approx(full, rel=1e-14)
    # a corner keeps exactly a quarter, an edge midpoint exactly a half
    assert clipped_disk_area(Region.SQUARE, (0.0, 0.0), r) == pytest.approx(full / 4, rel=1e-14)
    assert clipped_disk_area(Region.SQUARE, (1.0, 1.0), r) == pytest.approx(full / 4, rel=1e-14)
    assert clipped_disk_area(Region.SQUARE, (0.0, 0.5), r) == pytest.approx(full / 2, rel=1e-14)
    assert clipped_disk_area(Region.SQUARE, (0.5, 1.0), r) == pytest.approx(full / 2, rel=1e-14)


def test_clipped_area_near_one_edge_matches_boundary_profile():
    r = 0.12
    for g in (0.0, 0.01, 0.03, r / 2):
        want, _, _ = boundary_area_H(g, r)
        for center in ((g, 0.5), (0.5, g), (1.0 - g, 0.4), (0.37, 1.0 - g)):
            assert clipped_disk_area(Region.SQUARE, center, r) == pytest.approx(
                want, rel=1e-13
            )


@pytest.mark.parametrize("case", range(24))
def test_clipped_area_matches_monte_carlo(case):
    rng = np.random.default_rng(1000 + case)
    center = tuple(rng.random(2))
    r = float(rng.uniform(0.02, 0.48))
    region = Region.SQUARE if case % 2 else Region.TORUS
    want = clipped_disk_area(region, center, r)
    got, se = mc_disk_area(center, r, region, 200_000, rng)
    assert abs(got - want) <= 3.0 * se + 1e-6, f"center={center} r={r} {region}"


@given(coords, coords, radii)
def test_clipped_area_bounds(cx, cy, r):
    full = math.pi * r * r
    for region in Region:
        area = clipped_disk_area(region, (cx, cy), r)
        assert full / 4 - 1e-15 <= area <= full + 1e-15
        if region is Region.TORUS:
            assert area == pytest.approx(full, rel=1e-14)


def test_clipped_area_domain_guards():
    with pytest.raises(ValueError):
        clipped_disk_area(Region.SQUARE, (0.5, 0.5), 0.5)
    with pytest.raises(ValueError):
        clipped_disk_area(Region.SQUARE, (0.5, 0.5), 0.0)
    with pytest.raises(ValueError):
        clipped_disk_area(Region.SQUARE, (1.5, 0.5), 0.1)


# ---------------------------------------------------------------------------
# one-edge boundary profile H and its derivatives
# ---------------------------------------------------------------------------


def test_boundary_profile_anchor_values():
    r = 0.1
    h0, d1_0, d2_0 = boundary_area_H(0.0, r)
    assert h0 == pytest.approx(0.015707963267948966, rel=1e-14)  # half disk
    assert d1_0 == pytest.approx(2 * r, rel=1e-14)
    assert d2_0 == pytest.approx(0.0, abs=1e-14)
    h1, d1_1, d2_1 = boundary_area_H(r / 2, r)
    assert h1 == pytest.approx(0.025274078042854148, rel=1e-14)
    assert h1 == pytest.approx((2 * math.pi / 3 + math.sqrt(3) / 4) * r * r, rel=1e-14)
    assert d1_1 == pytest.approx(math.sqrt(3) * r, rel=1e-14)
    assert d2_1 == pytest.approx(-2.0 / math.sqrt(3), rel=1e-14)


@pytest.mark.parametrize("r", [0.05, 0.1, 0.2, 0.3, 0.45])
def test_boundary_profile_derivatives_match_finite_differences(r):
    # separate steps: the second difference divides by h^2, so it needs a
    # larger h to keep float roundoff below the 1e-6 comparison level
    h1 = 1e-5 * r
    h2 = 5e-4 * r
    for frac in np.linspace(0.05, 0.45, 9):
        g = frac * r
        _, d1, d2 = boundary_area_H(g, r)
        fd1 = (boundary_area_H(g + h1, r)[0] - boundary_area_H(g - h1, r)[0]) / (2 * h1)
        fd2 = (
            boundary_area_H(g + h2, r)[0]
            - 2 * boundary_area_H(g, r)[0]
            + boundary_area_H(g - h2, r)[0]
        ) / (h2 * h2)
        assert abs(fd1 - d1) / abs(d1) <= 1e-6
        assert abs(fd2 - d2) / abs(d2) <= 1e-6


@given(radii, st.floats(0.0, 1.0))
def test_boundary_profile_shape(r, frac):
    g = frac * r / 2  # g in [0, r/2]
    area, d1, d2 = boundary_area_H(g, r)
    assert math.pi * r * r / 2 - 1e-15 <= area <= math.pi * r * r
    assert d1 > 0.0
    assert d2 <= 0.0


def test_boundary_profile_domain_guards():
    with pytest.raises(ValueError):
        boundary_area_H(-0.01, 0.1)
    with pytest.raises(ValueError):
        boundary_area_H(0.06, 0.1)  # g > r/2
    with pytest.raises(ValueError):
        boundary_area_H(0.0, 0.5)


# ---------------------------------------------------------------------------
# two-disk lens
# ---------------------------------------------------------------------------


def test_lens_area_anchor_values():
    r = 0.1
    assert lens_area(0.0, r) == pytest.approx(math.pi * r * r, rel=1e-14)
    assert lens_area(2 * r, r) == 0.0
    assert lens_area(0.3, r) == 0.0
    # centers one radius apart: the classical equilateral lens
    want = (2 * math.pi / 3 - math.sqrt(3) / 2) * r * r
    assert lens_area(r, r) == pytest.approx(want, rel=1e-12)
    assert lens_area(r, r) == pytest.approx(0.012283696986087568, rel=1e-12)


def test_lens_area_matches_monte_carlo():
    r, d = 0.1, 0.15
    rng = np.random.default_rng(42)
    got, se = mc_lens_area(d, r, 10_000_000, rng)
    assert abs(got - lens_area(d, r)) <= 3.0 * se


@given(radii, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_lens_area_monotone_in_distance(r, f1, f2):
    d1, d2 = sorted((2.2 * r * f1, 2.2 * r * f2))
    assert lens_area(d2, r) <= lens_area(d1, r) + 1e-15


def test_lens_area_continuous_at_touching_distance():
    r = 0.2
    assert lens_area(2 * r * (1 - 1e-9), r) <= 1e-10


def test_lens_area_domain_guards():
    with pytest.raises(ValueError):
        lens_area(-0.1, 0.2)
    with pytest.raises(ValueError):
        lens_area(0.1, 0.0)


# ---------------------------------------------------------------------------
# boundary zones of the square
# ---------------------------------------------------------------------------


def test_zone_classification_examples():
    r = 0.1
    assert classify_square_zone((0.5, 0.5), r) is SquareZone.INTERIOR
    assert classify_square_zone((0.04, 0.5), r) is SquareZone.NEAR_BAND
    assert classify_square_zone((0.08, 0.5), r) is SquareZone.FAR_BAND
    assert classify_square_zone((0.05, 0.05), r) is SquareZone.CORNER
    assert classify_square_zone((0.97, 0.93), r) is SquareZone.CORNER
    # ties go to the boundary-heavier zone
    assert classify_square_zone((r, 0.5), r) is SquareZone.FAR_BAND
    assert classify_square_zone((r / 2, 0.5), r) is SquareZone.NEAR_BAND
    assert classify_square_zone((r, r), r) is SquareZone.CORNER


@given(radii)
def test_zone_areas_formulas_and_total(r):
    areas = square_zone_areas(r)
    assert areas[SquareZone.INTERIOR] == pytest.approx((1 - 2 * r) ** 2, rel=1e-12)
    assert areas[SquareZone.NEAR_BAND] == pytest.approx(4 * r / 2 * (1 - 2 * r) * 1, rel=1e-12)
    assert areas[SquareZone.FAR_BAND] == pytest.approx(2 * r * (1 - 2 * r), rel=1e-12)
    assert areas[SquareZone.CORNER] == pytest.approx(4 * r * r, rel=1e-12)
    assert sum(areas.values()) == pytest.approx(1.0, abs=1e-12)


def test_zone_classification_frequencies_match_areas():
    r = 0.13
    rng = np.random.default_rng(7)
    pts = rng.random((100_000, 2))
    counts = {zone: 0 for zone in SquareZone}
    for x, y in pts:
        counts[classify_square_zone((float(x), float(y)), r)] += 1
    areas = square_zone_areas(r)
    for zone in SquareZone:
        frac = counts[zone] / len(pts)
        se = math.sqrt(areas[zone] * (1 - areas[zone]) / len(pts))
        assert abs(frac - areas[zone]) <= 3.5 * se, zone


def test_zone_domain_guards():
    with pytest.raises(ValueError):
        classify_square_zone((0.5, 0.5), 0.5)
    with pytest.raises(ValueError):
        classify_square_zone((1.1, 0.5), 0.1)
    with pytest.raises(ValueError):
        square_zone_areas(0.0)
