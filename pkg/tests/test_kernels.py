"""Both kernel backends agree bit-for-bit and match independent references."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccdassess import _kernels
from ccdassess._kernels import _fallback
from oracles import philox_reference

compiled = pytest.mark.skipif("compiled" not in _kernels.available_backends(),
                              reason="extension not built")


def test_backend_switch():
    name = _kernels.backend_name()
    with _kernels.use_backend("python"):
        assert _kernels.backend_name() == "python"
    assert _kernels.backend_name() == name
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")


@pytest.mark.parametrize("comp", [False, True])
def test_box_sum_matches_direct_sum(backend, comp):
    rng = np.random.default_rng(3)
    a = rng.standard_normal((23, 31))
    s = _kernels.box_sum(a, 3, 2, comp)
    for i, j in [(0, 0), (11, 15), (22, 30), (5, 1)]:
        ref = a[max(0, i - 3):i + 4, max(0, j - 2):j + 3].sum()
        assert s[i, j] == pytest.approx(ref, abs=1e-12)


def test_philox_matches_numpy_reference(backend):
    for draw, k0, k1 in [(0, 0, 0), (3, 123, 456), (7, 2**64 - 1, 2**63 + 5)]:
        got = _kernels.philox4x64(9, draw, k0, k1)
        assert np.array_equal(got, philox_reference(9, draw, k0, k1))


@compiled
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40), st.integers(0, 9), st.integers(0, 9),
       st.booleans(), st.integers(0, 2**32), st.floats(-6, 6))
def test_box_sum_backends_bit_identical(h, w, hr, hc, comp, seed, scale):
    from ccdassess._kernels import _core
    a = np.random.default_rng(seed).standard_normal((h, w)) * 10.0 ** scale
    assert _core.box_sum(a, hr, hc, comp).tobytes() == _fallback.box_sum(a, hr, hc, comp).tobytes()


@compiled
@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3000), st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1),
       st.integers(0, 2**64 - 1))
def test_philox_backends_identical(n, draw, k0, k1):
    from ccdassess._kernels import _core
    assert np.array_equal(_core.philox4x64(n, draw, k0, k1), _fallback.philox4x64(n, draw, k0, k1))


@compiled
def test_points_in_ring_backends_identical():
    from ccdassess._kernels import _core
    rng = np.random.default_rng(5)
    px, py = rng.uniform(-1, 2, 20000), rng.uniform(-1, 2, 20000)
    xs = [0, 1, 1, 0.5, 0, 0]
    ys = [0, 0, 1, 0.3, 1, 0]
    # plus points sitting exactly on vertices and edges
    px = np.r_[px, xs, 0.5, 1.0]
    py = np.r_[py, ys, 0.0, 0.5]
    a = _core.points_in_ring(px, py, xs, ys, 1e-12)
    b = _fallback.points_in_ring(px, py, xs, ys, 1e-12)
    assert np.array_equal(a, b)
    assert a[-8:].all()
