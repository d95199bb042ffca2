"""Footprint rasterization and per-asset summary statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch
from .scene import geo_to_pixel, pixel_to_geo

# boundary tolerance, as a fraction of the larger pixel dimension
EDGE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class PixelMask:
    bits: np.ndarray

    def __post_init__(self):
        b = np.ascontiguousarray(self.bits, dtype=bool)
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @property
    def height(self):
        return self.bits.shape[0]

    @property
    def width(self):
        return self.bits.shape[1]

    @property
    def shape(self):
        return self.bits.shape

    @property
    def covered_count(self):
        return int(self.bits.sum())


def _candidate_window(footprint, gt, width, height):
    """Row/col ranges that can possibly hold covered pixel centers."""
    xs, ys = footprint.xs, footprint.ys
    corner_x = np.array([xs.min(), xs.max(), xs.min(), xs.max()])
    corner_y = np.array([ys.min(), ys.min(), ys.max(), ys.max()])
    rows, cols = geo_to_pixel(gt, corner_x, corner_y)
    r0 = max(0, int(math.floor(rows.min())) - 1)
    r1 = min(height, int(math.ceil(rows.max())) + 2)
    c0 = max(0, int(math.floor(cols.min())) - 1)
    c1 = min(width, int(math.ceil(cols.max())) + 2)
    return r0, r1, c0, c1


def rasterize_footprint(footprint, gt, width, height):
    """Set every pixel whose center lies inside the ring or on its boundary."""
    bits = np.zeros((height, width), dtype=bool)
    r0, r1, c0, c1 = _candidate_window(footprint, gt, width, height)
    if r0 >= r1 or c0 >= c1:
        return PixelMask(bits)
    rr, cc = np.mgrid[r0:r1, c0:c1]
    lon, lat = pixel_to_geo(gt, rr.ravel(), cc.ravel())
    tol = EDGE_TOLERANCE * max(abs(gt.pixel_width), abs(gt.pixel_height))
    hit = _kernels.points_in_ring(lon, lat, footprint.xs, footprint.ys, tol)
    bits[r0:r1, c0:c1] = hit.reshape(rr.shape).astype(bool)
    return PixelMask(bits)


@dataclass(frozen=True)
class ZonalStats:
    count: int
    min: float = math.nan
    max: float = math.nan
    mean: float = math.nan
    std: float = math.nan
    two_sigma_adjusted: float = math.nan

    @property
    def empty(self):
        return self.count == 0

    @classmethod
    def from_summary(cls, two_sigma_adjusted, maximum, count=None):
        """Stats known only by their published 2-sigma and max columns."""
        return cls(count=count if count is not None else 1,
                   max=float(maximum),
                   two_sigma_adjusted=float(two_sigma_adjusted))

    def to_dict(self):
        return {k: getattr(self, k) for k in
                ("count", "min", "max", "mean", "std", "two_sigma_adjusted")}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["count"]), *(float(_nan_if_none(d.get(k))) for k in
                                       ("min", "max", "mean", "std",
                                        "two_sigma_adjusted")))


def _nan_if_none(v):
    return math.nan if v is None else v


# every finite double times 2**1074 is an integer
_DYADIC_SCALE = 1074


def _scaled_int(x):
    num, den = float(x).as_integer_ratio()
    return num << (_DYADIC_SCALE - den.bit_length() + 1)


def _within_two_sigma_exact(v, candidates):
    """Exact test of |c - mean| <= 2 std for each candidate, in integers.

    With S = sum(v) and Q = sum(v**2), the condition is
    (n*c - S)**2 <= 4*(n*Q - S**2), which needs no division or square root.
    """
    ints = [_scaled_int(x) for x in v.tolist()]
    n = len(ints)
    s = sum(ints)
    q = sum(i * i for i in ints)
    limit = 4 * (n * q - s * s)
    return np.array([(n * _scaled_int(c) - s) ** 2 <= limit for c in candidates], dtype=bool)


def summarize(values):
    """Statistics of a 1-D sample; order-independent (exactly rounded sums).

    ``two_sigma_adjusted`` is the largest value within two population
    standard deviations of the mean.  Membership is decided exactly: values
    whose floating-point distance to a bound is too small to trust are
    re-tested in integer arithmetic.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    n = v.size
    if n == 0:
        return ZonalStats(0)
    vmin, vmax = float(v.min()), float(v.max())
    mean = math.fsum(v.tolist()) / n
    mean = min(max(mean, vmin), vmax)
    if vmin == vmax:
        return ZonalStats(n, vmin, vmax, mean, 0.0, vmax)
    # power-of-two scaling is exact and keeps the squares clear of under/overflow
    scale = math.ldexp(1.0, math.frexp(max(abs(vmin), abs(vmax)))[1])
    d = v / scale - mean / scale
    std = math.sqrt(math.fsum((d * d).tolist()) / n) * scale
    lo, hi = mean - 2.0 * std, mean + 2.0 * std
    slack = 1e-12 * (max(abs(vmin), abs(vmax)) + std)
    near = (np.abs(v - lo) <= slack) | (np.abs(v - hi) <= slack)
    kept = (v >= lo) & (v <= hi) & ~near
    if near.any():
        kept[near] = _within_two_sigma_exact(v, v[near])
    # the value nearest the mean is always within one std, so kept is never empty
    trimmed = float(v[kept].max())
    return ZonalStats(n, vmin, vmax, mean, std, trimmed)


def asset_statistics(raster, mask):
    if raster.shape != mask.shape:
        raise DimensionMismatch(
            f"raster is {raster.shape}, mask is {mask.shape}")
    sel = mask.bits & raster.valid
    return summarize(raster.values[sel])
