"""Coherent change detection and tiered damage triage for infrastructure assets."""

__version__ = "0.1.0"

from .classify import (AssetAssessment, DLClass, LKnClass, Thresholds, assess_asset,
                       classify_dl, classify_lkn, default_thresholds)
from .coherence import EstimatorWindow, ccd, estimate_coherence, multilook
from .scene import (AssetFootprint, ComplexScene, GeoTransform, RasterKind, ScalarRaster,
                    SceneStack, geo_to_pixel, pixel_to_geo, validate_stack)
from .synth import CoherenceField, DamagePatch, DamageScenario, build_stack, generate_pair
from .triage import ConnectivityInfo, TriageDecision, TriagePolicy, triage
from .zonal import PixelMask, ZonalStats, asset_statistics, rasterize_footprint

__all__ = [
    "AssetAssessment", "DLClass", "LKnClass", "Thresholds", "assess_asset",
    "classify_dl", "classify_lkn", "default_thresholds",
    "EstimatorWindow", "ccd", "estimate_coherence", "multilook",
    "AssetFootprint", "ComplexScene", "GeoTransform", "RasterKind", "ScalarRaster",
    "SceneStack", "geo_to_pixel", "pixel_to_geo", "validate_stack",
    "CoherenceField", "DamagePatch", "DamageScenario", "build_stack", "generate_pair",
    "ConnectivityInfo", "TriageDecision", "TriagePolicy", "triage",
    "PixelMask", "ZonalStats", "asset_statistics", "rasterize_footprint",
]
