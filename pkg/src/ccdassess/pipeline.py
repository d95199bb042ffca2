"""In-process composition of the stages exposed by the CLI."""

from .classify import assess_asset
from .coherence import DEFAULT_WINDOW, ccd, estimate_coherence, multilook
from .io.report import emit_report
from .triage import ConnectivityInfo, TriagePolicy, triage
from .zonal import asset_statistics, rasterize_footprint


def coherence_products(stack, window=DEFAULT_WINDOW, looks=(1, 1)):
    """``(coh_pre, coh_post, ccd)`` rasters for a validated stack."""
    coh_pre = multilook(estimate_coherence(stack.pre1, stack.pre2, window), *looks)
    coh_post = multilook(estimate_coherence(stack.pre2, stack.post, window), *looks)
    return coh_pre, coh_post, ccd(coh_pre, coh_post)


def assess_rasters(coh_pre, coh_post, ccd_raster, footprints, thresholds=None):
    out = []
    for fp in footprints:
        mask = rasterize_footprint(fp, ccd_raster.geotransform,
                                   ccd_raster.width, ccd_raster.height)
        out.append(assess_asset(fp.asset_id,
                                asset_statistics(coh_pre, mask),
                                asset_statistics(coh_post, mask),
                                asset_statistics(ccd_raster, mask),
                                thresholds))
    return out


def triage_all(assessments, policy=None, connectivity=None):
    policy = policy or TriagePolicy()
    connectivity = connectivity or {}
    return [triage(a, policy, connectivity.get(a.asset_id, ConnectivityInfo()))
            for a in assessments]


def run_pipeline(stack, footprints, window=DEFAULT_WINDOW, looks=(1, 1),
                 thresholds=None, policy=None, connectivity=None, fmt="csv"):
    """Stack + footprints -> ``(assessments, decisions, report_text)``."""
    policy = policy or TriagePolicy()
    products = coherence_products(stack, window, looks)
    assessments = assess_rasters(*products, footprints, thresholds)
    decisions = triage_all(assessments, policy, connectivity)
    return assessments, decisions, emit_report(assessments, decisions, fmt, policy)
