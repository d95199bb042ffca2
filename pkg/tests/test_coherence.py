import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccdassess.coherence import (EstimatorWindow, ccd, coherence_array, estimate_coherence,
                                 multilook)
from ccdassess.errors import (DegenerateFactors, DegenerateWindow, DimensionMismatch,
                              KindMismatch)
from ccdassess.scene import ComplexScene, GeoTransform, RasterKind, ScalarRaster
from ccdassess.synth import CoherenceField, generate_pair
from conftest import random_scene
from oracles import coherence_brute

GT = GeoTransform.north_up(0.0, 0.0, 1.0)


def coh(values):
    return ScalarRaster(np.asarray(values, dtype=float), GT, RasterKind.COHERENCE)


@pytest.mark.parametrize("bad", [(0, 5), (4, 5), (5, -1), (5, 2.5)])
def test_degenerate_window(bad):
    with pytest.raises(DegenerateWindow):
        EstimatorWindow(*bad)


def test_window_parse():
    assert EstimatorWindow.parse("3x7") == EstimatorWindow(3, 7)
    with pytest.raises(DegenerateWindow):
        EstimatorWindow.parse("4x4")


def test_matches_brute_force_window(backend):
    rng = np.random.default_rng(0)
    a = random_scene(rng, (17, 13))
    b = random_scene(rng, (17, 13))
    got = estimate_coherence(a, b, EstimatorWindow(5, 3)).values
    ref = coherence_brute(a.samples, b.samples, 5, 3)
    np.testing.assert_allclose(got, ref, rtol=0, atol=1e-12)


def test_self_coherence_is_one(backend):
    rng = np.random.default_rng(1)
    a = random_scene(rng, (40, 40))
    for w in (EstimatorWindow(1, 1), EstimatorWindow(5, 5), EstimatorWindow(9, 3)):
        c = estimate_coherence(a, a, w)
        assert np.all(np.abs(c.values[c.valid] - 1.0) <= 1e-12)


def test_global_phase_is_ignored():
    rng = np.random.default_rng(2)
    a = random_scene(rng, (32, 32))
    b = ComplexScene(a.samples * np.exp(1j * 1.234), a.geotransform)
    ca = estimate_coherence(a, a).values
    cb = estimate_coherence(a, b).values
    assert np.max(np.abs(ca - cb)) <= 1e-12


def test_symmetry_bit_exact(backend):
    rng = np.random.default_rng(4)
    a, b = random_scene(rng, (30, 20)), random_scene(rng, (30, 20))
    for w in (EstimatorWindow(3, 3), EstimatorWindow(101, 101)):
        assert (estimate_coherence(a, b, w).values.tobytes()
                == estimate_coherence(b, a, w).values.tobytes())


def test_zero_energy_window_is_nodata():
    s = np.zeros((9, 9), dtype=np.complex64)
    s[0, 0] = 1 + 1j
    a = ComplexScene(s, GT)
    c = estimate_coherence(a, a, EstimatorWindow(3, 3))
    assert c.valid[0, 0] and c.valid[1, 1]
    assert not c.valid[5, 5] and np.isnan(c.values[5, 5])


def test_dimension_mismatch():
    rng = np.random.default_rng(0)
    with pytest.raises(DimensionMismatch):
        estimate_coherence(random_scene(rng, (4, 4)), random_scene(rng, (4, 5)))


def test_compensated_large_window_agrees_with_brute():
    rng = np.random.default_rng(9)
    a, b = random_scene(rng, (12, 12)), random_scene(rng, (12, 12))
    w = EstimatorWindow(101, 101)  # area 10201 >= 1e4 -> compensated path
    got = estimate_coherence(a, b, w).values
    ref = coherence_brute(a.samples, b.samples, 101, 101)
    np.testing.assert_allclose(got, ref, rtol=0, atol=1e-12)


def test_monte_carlo_mean_at_half():
    a, b = generate_pair(CoherenceField.constant(256, 256, 0.5), seed=42)
    c = estimate_coherence(a, b, EstimatorWindow(9, 9)).values[4:-4, 4:-4]
    assert abs(c.mean() - 0.5) < 0.05


def test_statistical_consistency():
    """Spatial mean is monotone in gamma and its error shrinks with window area."""
    seeds = range(6)
    windows = (3, 9, 21)
    means = {}
    for g in (0.0, 0.2, 0.5, 0.9):
        for w in windows:
            h = w // 2
            per_seed = []
            for s in seeds:
                a, b = generate_pair(CoherenceField.constant(256, 256, g), s)
                per_seed.append(estimate_coherence(a, b, EstimatorWindow(w, w))
                                .values[h:-h, h:-h].mean())
            per_seed = np.array(per_seed)
            means[g, w] = (per_seed.mean(), per_seed.std(ddof=1) / np.sqrt(len(per_seed)))
    for w in windows:
        m = [means[g, w][0] for g in (0.0, 0.2, 0.5, 0.9)]
        assert all(x < y for x, y in zip(m, m[1:]))
    for g in (0.0, 0.2, 0.5, 0.9):
        for w0, w1 in zip(windows, windows[1:]):
            (m0, se0), (m1, se1) = means[g, w0], means[g, w1]
            assert abs(m1 - g) <= abs(m0 - g) + 3 * np.hypot(se0, se1)
    # zero-coherence bias decreases strictly with area at these sizes
    assert means[0.0, 3][0] > means[0.0, 9][0] > means[0.0, 21][0]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 4), st.integers(0, 4),
       st.integers(0, 2**32 - 1), st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_range_and_scale_invariance(h, w, hr, hc, seed, c):
    rng = np.random.default_rng(seed)
    a, b = random_scene(rng, (h, w)), random_scene(rng, (h, w))
    win = EstimatorWindow(2 * hr + 1, 2 * hc + 1)
    g = estimate_coherence(a, b, win)
    v = g.values[g.valid]
    assert np.all((v >= 0) & (v <= 1))
    assert np.array_equal(np.isnan(g.values), ~g.valid)
    gc, _ = coherence_array(a.samples, b.samples.astype(np.complex128) * c, win)
    assert np.nanmax(np.abs(gc - g.values)) <= 1e-9
    # storing c*b as a complex64 scene re-quantises samples (~6e-8 relative)
    bc = ComplexScene(b.samples.astype(np.complex128) * c, b.geotransform)
    assert np.nanmax(np.abs(estimate_coherence(a, bc, win).values - g.values)) <= 1e-6


def test_scale_invariance_exact_in_float64():
    """With samples exactly representable after scaling, invariance holds to 1e-9."""
    rng = np.random.default_rng(5)
    a, b = random_scene(rng, (16, 16)), random_scene(rng, (16, 16))
    for c in (2.0, -0.5j, 4 + 0j, 1j):
        bc = ComplexScene(b.samples * np.complex64(c), b.geotransform)
        assert np.nanmax(np.abs(estimate_coherence(a, bc).values
                                - estimate_coherence(a, b).values)) <= 1e-9


# -- multilook -----------------------------------------------------------------

def test_multilook_identity():
    r = coh(np.random.default_rng(0).uniform(size=(5, 7)))
    m = multilook(r, 1, 1)
    assert m == r


def test_multilook_constant():
    m = multilook(coh(np.full((4, 4), 0.7)), 2, 2)
    assert m.shape == (2, 2)
    np.testing.assert_allclose(m.values, 0.7, rtol=0, atol=1e-15)


def test_multilook_row_index():
    vals = np.repeat(np.arange(4.0)[:, None], 4, axis=1)
    m = multilook(ScalarRaster(vals, GT), 2, 2)
    assert m.values.tolist() == [[0.5, 0.5], [2.5, 2.5]]
    assert m.geotransform.pixel_width == 2.0 and m.geotransform.pixel_height == -2.0


def test_multilook_partial_blocks_and_nodata():
    vals = np.arange(15.0).reshape(3, 5)
    vals[0, 0] = np.nan
    m = multilook(ScalarRaster(vals, GT), 2, 2)
    assert m.shape == (2, 3)
    assert m.values[0, 0] == pytest.approx((1 + 5 + 6) / 3)
    assert m.values[1, 2] == 14.0
    allnan = np.full((2, 2), np.nan)
    assert not multilook(ScalarRaster(allnan, GT), 2, 2).valid.any()


@pytest.mark.parametrize("f", [(0, 1), (1, -2), (1.5, 1)])
def test_multilook_bad_factors(f):
    with pytest.raises(DegenerateFactors):
        multilook(coh(np.zeros((2, 2))), *f)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 5), st.integers(1, 5),
       st.integers(0, 2**32 - 1))
def test_multilook_conserves_mean(bh, bw, fr, fc, seed):
    vals = np.random.default_rng(seed).uniform(size=(bh * fr, bw * fc))
    m = multilook(coh(vals), fr, fc)
    assert abs(m.values.mean() - vals.mean()) <= 1e-12


# -- ccd -----------------------------------------------------------------------

@pytest.mark.parametrize("pre,post,expected", [(0.8, 0.3, 0.5), (0.6, 0.6, 0.0), (0.3, 0.8, -0.5)])
def test_ccd_arithmetic(pre, post, expected):
    d = ccd(coh(np.full((3, 3), pre)), coh(np.full((3, 3), post)))
    assert d.kind == RasterKind.CCD
    np.testing.assert_allclose(d.values, expected, atol=1e-15)


def test_ccd_nodata_propagates():
    a = np.full((2, 2), 0.5)
    b = np.full((2, 2), 0.2)
    a[0, 0] = np.nan
    b[1, 1] = np.nan
    d = ccd(coh(a), coh(b))
    assert d.valid.tolist() == [[False, True], [True, False]]


def test_ccd_kind_mismatch():
    with pytest.raises(KindMismatch):
        ccd(ScalarRaster(np.zeros((2, 2)), GT), coh(np.zeros((2, 2))))
