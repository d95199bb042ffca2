"""Windowed coherence estimation, multilooking and CCD maps."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    DegenerateFactors,
    DegenerateWindow,
    DimensionMismatch,
    GeotransformMismatch,
    KindMismatch,
)
from .scene import RasterKind, ScalarRaster

# window area from which the box sums switch to Neumaier summation
COMPENSATED_MIN_TERMS = 10_000


@dataclass(frozen=True)
class EstimatorWindow:
    rows: int = 5
    cols: int = 5

    def __post_init__(self):
        for name in ("rows", "cols"):
            v = getattr(self, name)
            if int(v) != v or v < 1 or v % 2 == 0:
                raise DegenerateWindow(f"window {name} must be an odd integer >= 1, got {v}")

    @classmethod
    def parse(cls, text):
        """``"5x5"`` / ``"3X7"`` -> window."""
        m = re.fullmatch(r"\s*(-?\d+)\s*[xX]\s*(-?\d+)\s*", str(text))
        if not m:
            raise DegenerateWindow(f"cannot parse window {text!r}; expected RxC")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def area(self):
        return self.rows * self.cols

    def __str__(self):
        return f"{self.rows}x{self.cols}"


DEFAULT_WINDOW = EstimatorWindow(5, 5)


def _check_pair(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"rasters differ in shape: {a.shape} vs {b.shape}")
    if not a.geotransform.bit_equal(b.geotransform):
        raise GeotransformMismatch("rasters differ in geotransform")


def window_sums(a, b, window):
    """Clipped-window sums of a*conj(b) (real, imag), |a|^2 and |b|^2.

    Each product is formed so that swapping ``a`` and ``b`` yields the same
    real sum and the exactly negated imaginary sum.
    """
    ar = a.real.astype(np.float64)
    ai = a.imag.astype(np.float64)
    br = b.real.astype(np.float64)
    bi = b.imag.astype(np.float64)
    hr, hc = window.rows // 2, window.cols // 2
    comp = window.area >= COMPENSATED_MIN_TERMS
    s = [_kernels.box_sum(p, hr, hc, comp) for p in (
        ar * br + ai * bi,
        ai * br - ar * bi,
        ar * ar + ai * ai,
        br * br + bi * bi,
    )]
    return tuple(s)


def coherence_array(a, b, window=DEFAULT_WINDOW):
    """Estimator on raw complex arrays of any precision: ``(gamma, valid)``."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"arrays differ in shape: {a.shape} vs {b.shape}")
    re_, im_, ea, eb = window_sums(a, b, window)
    valid = (ea > 0) & (eb > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        gamma = np.hypot(re_, im_) / np.sqrt(ea * eb)
    # Cauchy-Schwarz holds exactly; rounding may overshoot 1 by an ulp
    return np.where(valid, np.clip(gamma, 0.0, 1.0), np.nan), valid


def estimate_coherence(a, b, window=DEFAULT_WINDOW):
    """Sample coherence magnitude of two co-registered complex scenes.

    Pixels whose window carries no energy in either scene are no-data.
    Edge pixels use the clipped window, so they average fewer samples.
    """
    if not isinstance(window, EstimatorWindow):
        window = EstimatorWindow(*window)
    _check_pair(a, b)
    gamma, valid = coherence_array(a.samples, b.samples, window)
    return ScalarRaster(gamma, a.geotransform, RasterKind.COHERENCE,
                        date=b.acquisition_date, valid=valid)


def multilook(r, row_factor, col_factor):
    """Block-average ``r``; partial blocks at the far edges are kept."""
    for f in (row_factor, col_factor):
        if int(f) != f or f < 1:
            raise DegenerateFactors(f"multilook factors must be integers >= 1, got {f}")
    row_factor, col_factor = int(row_factor), int(col_factor)
    if row_factor == 1 and col_factor == 1:
        return ScalarRaster(r.values, r.geotransform, r.kind, r.date, r.valid)
    h, w = r.shape
    oh, ow = -(-h // row_factor), -(-w // col_factor)
    vals = np.zeros((oh * row_factor, ow * col_factor))
    cnt = np.zeros_like(vals)
    vals[:h, :w] = np.where(r.valid, r.values, 0.0)
    cnt[:h, :w] = r.valid
    block_sum = vals.reshape(oh, row_factor, ow, col_factor).sum(axis=(1, 3))
    block_cnt = cnt.reshape(oh, row_factor, ow, col_factor).sum(axis=(1, 3))
    valid = block_cnt > 0
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(valid, block_sum / block_cnt, np.nan)
    if r.kind == RasterKind.COHERENCE:
        out = np.where(valid, np.clip(out, 0.0, 1.0), np.nan)
    elif r.kind == RasterKind.CCD:
        out = np.where(valid, np.clip(out, -1.0, 1.0), np.nan)
    return ScalarRaster(out, r.geotransform.scaled(row_factor, col_factor),
                        r.kind, r.date, valid)


def ccd(coh_pre, coh_post):
    """Coherence change: pre-event coherence minus pre/post coherence.

    Positive values flag decorrelation (change), negative values newly
    stable ground.  No-data in either input propagates.
    """
    for name, r in (("coh_pre", coh_pre), ("coh_post", coh_post)):
        if r.kind != RasterKind.COHERENCE:
            raise KindMismatch(f"{name} must be a coherence raster, got {r.kind.name}")
    _check_pair(coh_pre, coh_post)
    valid = coh_pre.valid & coh_post.valid
    diff = np.where(valid, coh_pre.values - coh_post.values, np.nan)
    return ScalarRaster(diff, coh_pre.geotransform, RasterKind.CCD,
                        date=coh_post.date, valid=valid)
