import math

import numpy as np
import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from ccdassess.errors import DimensionMismatch
from ccdassess.scene import AssetFootprint, GeoTransform, RasterKind, ScalarRaster
from ccdassess.zonal import PixelMask, asset_statistics, rasterize_footprint, summarize
from conftest import pixel_rect
from oracles import mask_brute, random_simple_ring, trimmed_max_brute


def test_square_covering_two_by_two(gt, backend):
    fp = pixel_rect("sq", gt, 3, 4, 5, 6)
    m = rasterize_footprint(fp, gt, 10, 10)
    assert m.covered_count == 4
    assert m.bits[3:5, 4:6].all()


def test_outside_raster(gt):
    fp = pixel_rect("far", gt, 100, 100, 110, 110)
    assert rasterize_footprint(fp, gt, 10, 10).covered_count == 0


def test_boundary_through_centers_counts_inside(gt, backend):
    # edges run exactly along the centers of rows 2 and 4 and cols 1 and 3
    x0, x1 = 30.0015, 30.0035
    y0, y1 = 50.4975, 50.4955
    fp = AssetFootprint("b", [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)])
    m = rasterize_footprint(fp, gt, 8, 8)
    assert m.bits[2:5, 1:4].all()
    assert m.covered_count == 9


def test_convex_polygons_match_brute_force(gt, backend):
    rng = np.random.default_rng(17)
    for _ in range(25):
        pts = rng.uniform([30.0, 50.45], [30.05, 50.5], size=(12, 2))
        import shapely
        hull = shapely.MultiPoint(pts).convex_hull
        ring = list(hull.exterior.coords)
        fp = AssetFootprint("h", ring)
        m = rasterize_footprint(fp, gt, 50, 50)
        assert np.array_equal(m.bits, mask_brute(fp.ring, gt, 50, 50))


def test_rotated_transform_matches_brute_force(backend):
    gt = GeoTransform(30.0, 0.001, 0.0003, 50.5, 0.0002, -0.001)
    rng = np.random.default_rng(2)
    for _ in range(10):
        ring = random_simple_ring(rng, 30.02, 50.48, 0.015)
        fp = AssetFootprint("r", ring)
        assert np.array_equal(rasterize_footprint(fp, gt, 40, 40).bits,
                              mask_brute(fp.ring, gt, 40, 40))


def test_constant_zone():
    s = summarize(np.full(37, 0.7))
    assert (s.min, s.max, s.mean, s.two_sigma_adjusted, s.std) == (0.7, 0.7, 0.7, 0.7, 0.0)


def test_outlier_is_trimmed():
    vals = np.r_[np.full(99, 0.1), 0.9]
    s = summarize(vals)
    best, mean, std = trimmed_max_brute(vals)
    assert s.max == 0.9
    assert s.two_sigma_adjusted == 0.1 == best
    assert s.mean == pytest.approx(0.108, abs=1e-12)
    assert s.std == pytest.approx(math.sqrt(0.006336), rel=1e-12)
    assert s.mean + 2 * s.std == pytest.approx(0.26720, abs=1e-4)


def test_empty_mask_gives_nodata(gt):
    r = ScalarRaster(np.zeros((4, 4)), gt)
    s = asset_statistics(r, PixelMask(np.zeros((4, 4), bool)))
    assert s.count == 0 and s.empty
    assert all(math.isnan(getattr(s, k)) for k in ("min", "max", "mean", "std", "two_sigma_adjusted"))


def test_nodata_pixels_excluded(gt):
    vals = np.array([[0.2, np.nan], [0.4, 0.6]])
    r = ScalarRaster(vals, gt, RasterKind.COHERENCE)
    s = asset_statistics(r, PixelMask(np.ones((2, 2), bool)))
    assert s.count == 3 and s.mean == pytest.approx(0.4)


def test_dimension_mismatch(gt):
    with pytest.raises(DimensionMismatch):
        asset_statistics(ScalarRaster(np.zeros((4, 4)), gt), PixelMask(np.ones((3, 4), bool)))


values = st.lists(st.floats(-1, 1, allow_nan=False), min_size=1, max_size=200)


@settings(max_examples=200, deadline=None)
@example([7.499480098653644e-262, -1.0, -1.0, -1.0, -1.0])
@example([0.0, 0.0, 0.0, 0.0, 1.0])
@given(values)
def test_stats_invariants(vals):
    s = summarize(vals)
    assert s.min <= s.mean <= s.max
    assert s.std >= 0
    assert s.two_sigma_adjusted <= s.max
    best, _, _ = trimmed_max_brute(vals)
    assert s.two_sigma_adjusted == best


@settings(max_examples=100, deadline=None)
@given(values, st.randoms(use_true_random=False))
def test_stats_permutation_invariant(vals, rnd):
    shuffled = list(vals)
    rnd.shuffle(shuffled)
    assert summarize(vals) == summarize(shuffled)


@settings(max_examples=100, deadline=None)
@given(values)
def test_adding_mean_value(vals):
    s = summarize(vals)
    t = summarize(list(vals) + [s.mean])
    assert (t.min, t.max) == (s.min, s.max)
    # one-ulp slack for the rounded mean itself
    assert t.std <= s.std * (1 + 4e-16) + 1e-300
