"""Synthetic co-registered speckle with a prescribed coherence field.

Every pixel draws from a Philox4x64-10 block addressed by
``counter = (pixel_index, draw_index, 0, 0)`` and ``key = (seed, stream)``,
so the output never depends on evaluation order or chunking.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ScenarioError
from .scene import AssetFootprint, ComplexScene, GeoTransform, validate_stack
from .zonal import rasterize_footprint

_TWO_PI = 2.0 * np.pi
_U53 = 2.0 ** -53

# key[1] values reserved for each role in a stack
STREAM_PAIR = 0
STREAM_POST = 1


def counter_uniforms(n, seed, stream=0, draw=0):
    """``(n, 4)`` uniforms in (0, 1], deterministic in (seed, stream, draw, pixel)."""
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ScenarioError(f"seed must fit in 64 unsigned bits, got {seed}")
    raw = _kernels.philox4x64(int(n), int(draw), seed, int(stream))
    return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * _U53


def circular_gaussians(n, seed, stream=0, draw=0):
    """Two independent unit-variance circular complex Gaussians per pixel."""
    u = counter_uniforms(n, seed, stream, draw)
    r1 = np.sqrt(-2.0 * np.log(u[:, 0]))
    r2 = np.sqrt(-2.0 * np.log(u[:, 2]))
    t1 = _TWO_PI * u[:, 1]
    t2 = _TWO_PI * u[:, 3]
    # each Box-Muller pair gives real+imag; 1/sqrt(2) makes E|z|^2 = 1
    s = np.sqrt(0.5)
    z1 = (r1 * np.cos(t1) + 1j * (r1 * np.sin(t1))) * s
    z2 = (r2 * np.cos(t2) + 1j * (r2 * np.sin(t2))) * s
    return z1, z2


@dataclass(frozen=True, eq=False)
class CoherenceField:
    gamma: np.ndarray

    def __post_init__(self):
        g = np.array(self.gamma, dtype=np.float64)
        if g.ndim != 2:
            raise ScenarioError("coherence field must be 2-D")
        if not (np.isfinite(g).all() and (g >= 0).all() and (g <= 1).all()):
            raise ScenarioError("coherence field values must lie in [0, 1]")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @classmethod
    def constant(cls, height, width, gamma):
        return cls(np.full((height, width), float(gamma)))

    @property
    def shape(self):
        return self.gamma.shape


def _correlate(base, gamma, noise):
    return gamma * base + np.sqrt(1.0 - gamma * gamma) * noise


def _default_gt():
    return GeoTransform.north_up(0.0, 0.0, 1.0)


def generate_pair(field, seed, geotransform=None, dates=(None, None)):
    """Scenes ``a = v`` and ``b = gamma*v + sqrt(1-gamma^2)*n`` per pixel."""
    h, w = field.shape
    v, n = circular_gaussians(h * w, seed, STREAM_PAIR)
    g = field.gamma.ravel()
    b = _correlate(v, g, n)
    gt = geotransform or _default_gt()
    return (ComplexScene(v.reshape(h, w), gt, dates[0]),
            ComplexScene(b.reshape(h, w), gt, dates[1]))


def correlated_scene(base, field, seed, stream=STREAM_POST, date=None):
    """A scene whose population coherence with ``base`` is ``field.gamma``."""
    if base.shape != field.shape:
        raise ScenarioError("field and base scene differ in shape")
    h, w = base.shape
    n, _ = circular_gaussians(h * w, seed, stream)
    b = _correlate(base.samples.ravel().astype(np.complex128), field.gamma.ravel(), n)
    return ComplexScene(b.reshape(h, w), base.geotransform, date)


@dataclass(frozen=True)
class DamagePatch:
    footprint: AssetFootprint
    damaged_gamma: float


@dataclass(frozen=True)
class DamageScenario:
    background_gamma: float
    patches: tuple = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self):
        bg = float(self.background_gamma)
        if not 0.0 <= bg <= 1.0:
            raise ScenarioError(f"background_gamma {bg} outside [0, 1]")
        patches = tuple(self.patches)
        for p in patches:
            if not 0.0 <= p.damaged_gamma <= 1.0:
                raise ScenarioError(
                    f"patch {p.footprint.asset_id}: damaged_gamma outside [0, 1]")
            if not p.damaged_gamma < bg:
                raise ScenarioError(
                    f"patch {p.footprint.asset_id}: damaged_gamma {p.damaged_gamma} "
                    f"must be below background_gamma {bg}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ScenarioError("seed must fit in 64 unsigned bits")
        object.__setattr__(self, "background_gamma", bg)
        object.__setattr__(self, "patches", patches)
        object.__setattr__(self, "seed", int(self.seed))

    def post_field(self, shape, gt):
        h, w = shape
        gamma = np.full((h, w), self.background_gamma)
        for p in self.patches:  # later patches win where they overlap
            mask = rasterize_footprint(p.footprint, gt, w, h)
            gamma[mask.bits] = p.damaged_gamma
        return CoherenceField(gamma)


DEFAULT_DATES = (_dt.date(2022, 1, 19), _dt.date(2022, 2, 12), _dt.date(2022, 4, 1))


def build_stack(scenario, dims, gt, dates=DEFAULT_DATES):
    """pre1/pre2 at background coherence; post against pre2 with damage patches."""
    h, w = dims
    dates = tuple(_dt.date.fromisoformat(d) if isinstance(d, str) else d for d in dates)
    pre_field = CoherenceField.constant(h, w, scenario.background_gamma)
    pre1, pre2 = generate_pair(pre_field, scenario.seed, gt, dates[:2])
    post = correlated_scene(pre2, scenario.post_field((h, w), gt), scenario.seed,
                            STREAM_POST, dates[2])
    return validate_stack(pre1, pre2, post)
