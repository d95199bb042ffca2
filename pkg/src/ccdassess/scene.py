"""Raster and footprint data model shared by every processing stage."""

from __future__ import annotations

import datetime as _dt
import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DateOrderViolation,
    DimensionMismatch,
    GeotransformMismatch,
    InvalidPolygon,
    InvalidScene,
    SingularTransform,
)


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GeoTransform:
    """Affine pixel -> lon/lat mapping.

    Coefficients follow the usual six-term layout::

        lon = origin_x + (col + 0.5) * pixel_width + (row + 0.5) * row_rotation
        lat = origin_y + (col + 0.5) * col_rotation + (row + 0.5) * pixel_height

    ``(row, col)`` addresses pixel centers, hence the half-pixel offsets.
    """

    origin_x: float
    pixel_width: float
    row_rotation: float
    origin_y: float
    col_rotation: float
    pixel_height: float

    def __post_init__(self):
        coeffs = self.as_tuple()
        if not all(np.isfinite(coeffs)):
            raise SingularTransform(f"non-finite geotransform {coeffs}")
        if self.pixel_width == 0 or self.pixel_height == 0:
            raise SingularTransform("pixel_width and pixel_height must be non-zero")

    @classmethod
    def north_up(cls, origin_x, origin_y, pixel_size, pixel_height=None):
        if pixel_height is None:
            pixel_height = -abs(pixel_size)
        return cls(float(origin_x), float(pixel_size), 0.0,
                   float(origin_y), 0.0, float(pixel_height))

    def as_tuple(self):
        return (self.origin_x, self.pixel_width, self.row_rotation,
                self.origin_y, self.col_rotation, self.pixel_height)

    @property
    def determinant(self):
        return self.pixel_width * self.pixel_height - self.row_rotation * self.col_rotation

    def bit_equal(self, other):
        a = np.array(self.as_tuple(), dtype=np.float64)
        b = np.array(other.as_tuple(), dtype=np.float64)
        return a.tobytes() == b.tobytes()

    def scaled(self, row_factor, col_factor):
        return GeoTransform(self.origin_x, self.pixel_width * col_factor,
                            self.row_rotation * row_factor, self.origin_y,
                            self.col_rotation * col_factor,
                            self.pixel_height * row_factor)


def pixel_to_geo(gt, row, col):
    """Center of pixel ``(row, col)`` in lon/lat.  Accepts scalars or arrays."""
    c = np.asarray(col, dtype=np.float64) + 0.5
    r = np.asarray(row, dtype=np.float64) + 0.5
    lon = gt.origin_x + c * gt.pixel_width + r * gt.row_rotation
    lat = gt.origin_y + c * gt.col_rotation + r * gt.pixel_height
    if lon.ndim == 0:
        return float(lon), float(lat)
    return lon, lat


def geo_to_pixel(gt, lon, lat):
    """Inverse of :func:`pixel_to_geo`; returns fractional ``(row, col)``."""
    det = gt.determinant
    if det == 0:
        raise SingularTransform("geotransform determinant is zero")
    dx = np.asarray(lon, dtype=np.float64) - gt.origin_x
    dy = np.asarray(lat, dtype=np.float64) - gt.origin_y
    col = (dx * gt.pixel_height - dy * gt.row_rotation) / det - 0.5
    row = (dy * gt.pixel_width - dx * gt.col_rotation) / det - 0.5
    if row.ndim == 0:
        return float(row), float(col)
    return row, col


def _as_date(value):
    if value is None or isinstance(value, _dt.date):
        return value
    return _dt.date.fromisoformat(str(value))


@dataclass(frozen=True, eq=False)
class ComplexScene:
    """Single-look complex samples, ``samples[row, col]`` as complex64."""

    samples: np.ndarray
    geotransform: GeoTransform
    acquisition_date: _dt.date | None = None

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 2:
            raise InvalidScene(f"samples must be 2-D, got shape {s.shape}")
        s = s.astype(np.complex64, copy=False)
        if not np.isfinite(s.view(np.float32)).all():
            raise InvalidScene("scene contains NaN/Inf samples")
        object.__setattr__(self, "samples", _frozen(s))
        object.__setattr__(self, "acquisition_date", _as_date(self.acquisition_date))

    @property
    def height(self):
        return self.samples.shape[0]

    @property
    def width(self):
        return self.samples.shape[1]

    @property
    def shape(self):
        return self.samples.shape

    def __eq__(self, other):
        if not isinstance(other, ComplexScene):
            return NotImplemented
        return (self.shape == other.shape
                and self.samples.tobytes() == other.samples.tobytes()
                and self.geotransform.bit_equal(other.geotransform)
                and self.acquisition_date == other.acquisition_date)

    __hash__ = None


class RasterKind(enum.IntEnum):
    OTHER = 0
    COHERENCE = 1
    CCD = 2


_KIND_RANGE = {
    RasterKind.COHERENCE: (0.0, 1.0),
    RasterKind.CCD: (-1.0, 1.0),
}


@dataclass(frozen=True, eq=False)
class ScalarRaster:
    """Real-valued raster; no-data pixels are NaN in ``values`` and False in ``valid``."""

    values: np.ndarray
    geotransform: GeoTransform
    kind: RasterKind = RasterKind.OTHER
    date: _dt.date | None = None
    valid: np.ndarray = field(default=None)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise InvalidScene(f"values must be 2-D, got shape {v.shape}")
        if self.valid is None:
            valid = np.isfinite(v)
        else:
            valid = np.asarray(self.valid, dtype=bool)
            if valid.shape != v.shape:
                raise DimensionMismatch("valid mask shape differs from values")
            if not np.isfinite(v[valid]).all():
                raise InvalidScene("valid pixels must be finite")
        v[~valid] = np.nan
        kind = RasterKind(self.kind)
        if kind in _KIND_RANGE:
            lo, hi = _KIND_RANGE[kind]
            vv = v[valid]
            if vv.size and (vv.min() < lo or vv.max() > hi):
                raise InvalidScene(
                    f"{kind.name.lower()} values outside [{lo}, {hi}]")
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "valid", _frozen(valid))
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "date", _as_date(self.date))

    @property
    def height(self):
        return self.values.shape[0]

    @property
    def width(self):
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape

    def __eq__(self, other):
        if not isinstance(other, ScalarRaster):
            return NotImplemented
        return (self.shape == other.shape
                and self.kind == other.kind
                and self.values.tobytes() == other.values.tobytes()
                and np.array_equal(self.valid, other.valid)
                and self.geotransform.bit_equal(other.geotransform)
                and self.date == other.date)

    __hash__ = None


def _segments_intersect(p1, p2, q1, q2):
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
        return True
    return ((d1 == 0 and on_seg(q1, q2, p1)) or (d2 == 0 and on_seg(q1, q2, p2))
            or (d3 == 0 and on_seg(p1, p2, q1)) or (d4 == 0 and on_seg(p1, p2, q2)))


def ring_is_simple(ring):
    """Pairwise segment test; adjacent edges may only share their common vertex."""
    n = len(ring) - 1
    segs = [(ring[i], ring[i + 1]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent: overlapping collinear edges are still a defect
                a, b = segs[i]
                c, d = segs[j]
                shared = b if j == i + 1 else a
                other_i = a if shared == b else b
                other_j = d if shared == c else c
                cross = ((other_i[0] - shared[0]) * (other_j[1] - shared[1])
                         - (other_i[1] - shared[1]) * (other_j[0] - shared[0]))
                dot = ((other_i[0] - shared[0]) * (other_j[0] - shared[0])
                       + (other_i[1] - shared[1]) * (other_j[1] - shared[1]))
                if cross == 0 and dot > 0:
                    return False
                continue
            if _segments_intersect(*segs[i], *segs[j]):
                return False
    return True


@dataclass(frozen=True)
class AssetFootprint:
    asset_id: str
    ring: tuple
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ring = tuple((float(x), float(y)) for x, y in self.ring)
        if len(ring) < 4:
            raise InvalidPolygon(f"{self.asset_id}: ring needs >= 4 vertices, got {len(ring)}")
        if ring[0] != ring[-1]:
            raise InvalidPolygon(f"{self.asset_id}: ring is not closed")
        if not all(np.isfinite(ring).ravel()):
            raise InvalidPolygon(f"{self.asset_id}: non-finite vertex")
        if len(set(ring[:-1])) < 3:
            raise InvalidPolygon(f"{self.asset_id}: ring is degenerate")
        if not ring_is_simple(ring):
            raise InvalidPolygon(f"{self.asset_id}: ring self-intersects")
        object.__setattr__(self, "ring", ring)

    @property
    def xs(self):
        return np.array([p[0] for p in self.ring])

    @property
    def ys(self):
        return np.array([p[1] for p in self.ring])


@dataclass(frozen=True)
class SceneStack:
    pre1: ComplexScene
    pre2: ComplexScene
    post: ComplexScene


def validate_stack(pre1, pre2, post):
    """Check dims, then geotransforms, then dates; the first failure is reported."""
    scenes = {"pre1": pre1, "pre2": pre2, "post": post}
    for name in ("pre2", "post"):
        if scenes[name].shape != pre1.shape:
            raise DimensionMismatch(
                f"{name} is {scenes[name].height}x{scenes[name].width}, "
                f"pre1 is {pre1.height}x{pre1.width}")
    for name in ("pre2", "post"):
        if not scenes[name].geotransform.bit_equal(pre1.geotransform):
            raise GeotransformMismatch(f"{name} geotransform differs from pre1")
    dates = [(n, s.acquisition_date) for n, s in scenes.items()]
    for n, d in dates:
        if d is None:
            raise DateOrderViolation(f"{n} has no acquisition date")
    for (n0, d0), (n1, d1) in zip(dates, dates[1:]):
        if not d0 < d1:
            raise DateOrderViolation(f"{n1} ({d1}) is not after {n0} ({d0})")
    return SceneStack(pre1, pre2, post)
