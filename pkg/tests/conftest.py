import csv
import os
import sys
from pathlib import Path

import pytest

from ccdassess import _kernels
from ccdassess.scene import AssetFootprint, ComplexScene, GeoTransform

sys.path.insert(0, os.path.dirname(__file__))

DATA = Path(__file__).parent / "data"


@pytest.fixture(params=_kernels.available_backends())
def backend(request):
    with _kernels.use_backend(request.param):
        yield request.param


@pytest.fixture(scope="session")
def bridges():
    with open(DATA / "bridges.csv", newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def gt():
    return GeoTransform.north_up(30.0, 50.5, 0.001)


def random_scene(rng, shape, gt=None, date=None):
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return ComplexScene(z, gt or GeoTransform.north_up(0.0, 0.0, 1.0), date)


def pixel_rect(asset_id, gt, r0, c0, r1, c1):
    """Footprint whose edges run along pixel edges rows r0..r1, cols c0..c1."""
    x0 = gt.origin_x + c0 * gt.pixel_width
    x1 = gt.origin_x + c1 * gt.pixel_width
    y0 = gt.origin_y + r0 * gt.pixel_height
    y1 = gt.origin_y + r1 * gt.pixel_height
    return AssetFootprint(asset_id, [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)])


def bridge_assessment(row, thresholds=None):
    """Classify one published table row from its summary-statistic columns."""
    from ccdassess.classify import assess_asset
    from ccdassess.zonal import ZonalStats

    def zs(two_s, mx):
        return ZonalStats.from_summary(float(row[two_s]), float(row[mx]))

    return assess_asset(row["bridge"],
                        zs("coh_before_2s", "coh_before_max"),
                        zs("coh_after_2s", "coh_after_max"),
                        zs("ccd_2s", "ccd_max"), thresholds)


SCENARIO_GT = GeoTransform.north_up(30.0, 50.5, 0.0002)


def two_asset_layout(gt=SCENARIO_GT):
    """Asset A under a damage patch, control asset B well away from it."""
    a = pixel_rect("A", gt, 10, 10, 18, 34)
    b = pixel_rect("B", gt, 40, 10, 48, 34)
    patch = pixel_rect("patchA", gt, 6, 6, 22, 38)
    return a, b, patch


def write_case(dirpath, seed=7, size=64):
    """Scenario + footprint files for the staged CLI run; returns their paths."""
    import json
    from ccdassess.io.wkt import dump_footprints, to_wkt

    a, b, patch = two_asset_layout()
    scen = {"width": size, "height": size, "geotransform": list(SCENARIO_GT.as_tuple()),
            "dates": ["2022-01-19", "2022-02-12", "2022-04-01"],
            "background_gamma": 0.85, "seed": seed,
            "patches": [{"id": "patchA", "wkt": to_wkt(patch.ring), "damaged_gamma": 0.15}]}
    sp = Path(dirpath) / "scenario.json"
    sp.write_text(json.dumps(scen))
    fp = Path(dirpath) / "footprints.tsv"
    fp.write_text(dump_footprints([a, b]))
    return sp, fp


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
