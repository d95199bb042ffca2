"""Reliability (LKn) and damage-level (DL) grading of per-asset statistics."""

from __future__ import annotations

import enum
import functools
import json
import math
from dataclasses import dataclass
from importlib import resources

from .errors import ConfigError, EmptyStats
from .zonal import ZonalStats


class LKnClass(enum.IntEnum):
    """Level of knowledge; a higher member means a more reliable assessment."""

    LOW = 0
    MEDIUM = 1
    HIGH = 2

    @property
    def label(self):
        return "LKn_" + self.name[0]

    @classmethod
    def from_name(cls, text):
        return _lookup(cls, text, {"H": "HIGH", "M": "MEDIUM", "L": "LOW"}, "LKn_")


@functools.total_ordering
class DLClass(enum.Enum):
    """Damage level.  ``NOT_ASSIGNED`` (negative change) is not ordered."""

    LOW = 0
    MODERATE = 1
    HIGH = 2
    NOT_ASSIGNED = None

    def __lt__(self, other):
        if not isinstance(other, DLClass):
            return NotImplemented
        if self is DLClass.NOT_ASSIGNED or other is DLClass.NOT_ASSIGNED:
            raise TypeError("NOT_ASSIGNED damage level is not ordered")
        return self.value < other.value

    @property
    def label(self):
        return "-" if self is DLClass.NOT_ASSIGNED else "DL_" + self.name[0]

    @classmethod
    def from_name(cls, text):
        if str(text).strip() == "-":
            return cls.NOT_ASSIGNED
        return _lookup(cls, text, {"H": "HIGH", "M": "MODERATE", "L": "LOW",
                                   "NOTASSIGNED": "NOT_ASSIGNED"}, "DL_")


def _lookup(cls, text, short, prefix):
    t = str(text).strip()
    if t.upper().startswith(prefix.upper()):
        t = t[len(prefix):]
    key = t.strip().upper().replace(" ", "_")
    key = short.get(key.replace("_", ""), key)
    try:
        return cls[key]
    except KeyError:
        raise ConfigError(f"unknown {cls.__name__} {text!r}") from None


_STATS = ("max", "two_sigma")
_CLASS_NAMES = {"lkn": ("Low", "Medium", "High"), "dl": ("Low", "Moderate", "High")}


@dataclass(frozen=True)
class Thresholds:
    """Lower bounds per class and statistic, ``{"lkn": {"max": {...}}, ...}``.

    Bins are ``[low, high)``, the top bin also holds its upper bound.  A value
    falls in the highest class whose lower bound it reaches; anything below
    the Low bin (e.g. negative CCD) is Low.
    """

    table: dict

    @classmethod
    def from_mapping(cls, doc):
        table = {}
        for grade, names in _CLASS_NAMES.items():
            if grade not in doc:
                raise ConfigError(f"thresholds: missing section {grade!r}")
            table[grade] = {}
            for stat in _STATS:
                bins = doc[grade].get(stat)
                if not isinstance(bins, dict):
                    raise ConfigError(f"thresholds: missing {grade}.{stat}")
                parsed = []
                for name in names:
                    if name not in bins:
                        raise ConfigError(f"thresholds: missing {grade}.{stat}.{name}")
                    try:
                        lo, hi = (float(x) for x in bins[name])
                    except (TypeError, ValueError):
                        raise ConfigError(
                            f"thresholds: {grade}.{stat}.{name} must be [low, high]") from None
                    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                        raise ConfigError(f"thresholds: bad bin {grade}.{stat}.{name}")
                    parsed.append((lo, hi))
                for (lo0, hi0), (lo1, _) in zip(parsed, parsed[1:]):
                    if hi0 != lo1:
                        raise ConfigError(
                            f"thresholds: {grade}.{stat} bins are not contiguous")
                table[grade][stat] = tuple(parsed)
        return cls(table)

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"thresholds: {exc}") from None
        return cls.from_mapping(doc)

    def to_mapping(self):
        return {grade: {stat: {name: list(b) for name, b in
                               zip(_CLASS_NAMES[grade], self.table[grade][stat])}
                        for stat in _STATS}
                for grade in _CLASS_NAMES}

    def bin_index(self, grade, stat, value):
        bins = self.table[grade][stat]
        for idx in range(len(bins) - 1, 0, -1):
            if value >= bins[idx][0]:
                return idx
        return 0


@functools.lru_cache(maxsize=1)
def default_thresholds():
    doc = json.loads(resources.files(__package__)
                     .joinpath("default_thresholds.json").read_text("utf-8"))
    return Thresholds.from_mapping(doc)


def classify_lkn(coh_before, thresholds=None):
    """Reliability from pre-event coherence: the weaker of the max and 2-sigma grades."""
    if coh_before.empty:
        raise EmptyStats("pre-event coherence statistics are empty")
    t = thresholds or default_thresholds()
    by_max = t.bin_index("lkn", "max", coh_before.max)
    by_2s = t.bin_index("lkn", "two_sigma", coh_before.two_sigma_adjusted)
    return LKnClass(min(by_max, by_2s))


def classify_dl(ccd_stats, thresholds=None):
    if ccd_stats.empty:
        raise EmptyStats("CCD statistics are empty")
    if ccd_stats.max < 0:
        return DLClass.NOT_ASSIGNED
    t = thresholds or default_thresholds()
    by_max = t.bin_index("dl", "max", ccd_stats.max)
    by_2s = t.bin_index("dl", "two_sigma", ccd_stats.two_sigma_adjusted)
    return DLClass(min(by_max, by_2s))


@dataclass(frozen=True)
class AssetAssessment:
    asset_id: str
    coh_before: ZonalStats
    coh_after: ZonalStats
    ccd: ZonalStats
    lkn: LKnClass
    dl: DLClass

    def to_dict(self):
        return {
            "asset_id": self.asset_id,
            "coh_before": self.coh_before.to_dict(),
            "coh_after": self.coh_after.to_dict(),
            "ccd": self.ccd.to_dict(),
            "lkn": self.lkn.label,
            "dl": self.dl.label,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["asset_id"], ZonalStats.from_dict(d["coh_before"]),
                   ZonalStats.from_dict(d["coh_after"]), ZonalStats.from_dict(d["ccd"]),
                   LKnClass.from_name(d["lkn"]), DLClass.from_name(d["dl"]))


def assess_asset(asset_id, coh_before, coh_after, ccd_stats, thresholds=None):
    for name, s in (("pre-event coherence", coh_before),
                    ("post-event coherence", coh_after), ("CCD", ccd_stats)):
        if s.empty:
            raise EmptyStats(f"{asset_id}: {name} statistics are empty "
                             "(footprint covers no valid pixel)", asset_id)
    return AssetAssessment(asset_id, coh_before, coh_after, ccd_stats,
                           classify_lkn(coh_before, thresholds),
                           classify_dl(ccd_stats, thresholds))
