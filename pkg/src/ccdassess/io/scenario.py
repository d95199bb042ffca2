"""Scenario documents for the ``synth`` subcommand.

JSON object, e.g.::

    {
      "width": 64, "height": 64,
      "geotransform": [30.0, 0.0002, 0.0, 50.5, 0.0, -0.0002],
      "dates": ["2022-01-19", "2022-02-12", "2022-04-01"],
      "background_gamma": 0.85,
      "seed": 7,
      "patches": [{"id": "A", "wkt": "POLYGON((...))", "damaged_gamma": 0.15}]
    }

``geotransform`` and ``dates`` are optional.
"""

import json

from ..errors import ConfigError
from ..scene import AssetFootprint, GeoTransform
from ..synth import DEFAULT_DATES, DamagePatch, DamageScenario
from .wkt import parse_wkt

_KEYS = {"width", "height", "geotransform", "dates", "background_gamma", "seed", "patches"}


def scenario_from_dict(doc):
    """Returns ``(scenario, (height, width), geotransform, dates)``."""
    if not isinstance(doc, dict):
        raise ConfigError("scenario: top level must be an object")
    unknown = set(doc) - _KEYS
    if unknown:
        raise ConfigError(f"scenario: unknown keys {sorted(unknown)}")
    try:
        h, w = int(doc["height"]), int(doc["width"])
        bg = float(doc["background_gamma"])
        seed = int(doc.get("seed", 0))
    except KeyError as exc:
        raise ConfigError(f"scenario: missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"scenario: {exc}") from None
    if h < 1 or w < 1:
        raise ConfigError("scenario: width and height must be positive")
    gt_coeffs = doc.get("geotransform", [0.0, 1.0, 0.0, 0.0, 0.0, -1.0])
    if len(gt_coeffs) != 6:
        raise ConfigError("scenario: geotransform needs 6 coefficients")
    gt = GeoTransform(*(float(c) for c in gt_coeffs))
    dates = tuple(doc.get("dates", [d.isoformat() for d in DEFAULT_DATES]))
    if len(dates) != 3:
        raise ConfigError("scenario: dates needs pre1, pre2 and post dates")
    patches = []
    for i, p in enumerate(doc.get("patches", [])):
        try:
            fp = AssetFootprint(str(p.get("id", f"patch{i}")), parse_wkt(p["wkt"]))
            patches.append(DamagePatch(fp, float(p["damaged_gamma"])))
        except KeyError as exc:
            raise ConfigError(f"scenario: patch {i} missing {exc}") from None
    return DamageScenario(bg, tuple(patches), seed), (h, w), gt, dates


def load_scenario(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"scenario: {exc}") from None
    return scenario_from_dict(doc)
