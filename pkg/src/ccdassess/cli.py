"""Command line entry point.

Exit codes: 0 success, 2 input-format error, 3 contract violation, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__, _kernels
from .classify import AssetAssessment, Thresholds, default_thresholds
from .coherence import EstimatorWindow, ccd, estimate_coherence, multilook
from .errors import ConfigError, ContractViolation, FormatError
from .io.raster import read_raster, write_raster
from .io.report import emit_report, jsonable
from .io.scenario import load_scenario
from .io.wkt import load_footprints
from .pipeline import assess_rasters, triage_all
from .scene import ComplexScene, RasterKind, ScalarRaster
from .synth import build_stack
from .triage import TriageDecision, TriagePolicy, load_connectivity, load_policy
from .zonal import asset_statistics, rasterize_footprint

log = logging.getLogger("ccdassess")

EXIT_OK, EXIT_FORMAT, EXIT_CONTRACT, EXIT_IO = 0, 2, 3, 4


def _looks(text):
    parts = str(text).lower().split("x")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}")
    return int(parts[0]), int(parts[1])


def _window(text):
    try:
        return EstimatorWindow.parse(text)
    except ContractViolation as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _read_json(path, what):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{what}: {exc}") from None


def _dump(doc):
    return json.dumps(doc, indent=2) + "\n"


def _scene(path):
    r = read_raster(path)
    if not isinstance(r, ComplexScene):
        raise FormatError(f"{path}: expected a complex scene")
    return r


def _scalar(path, kind=None):
    r = read_raster(path)
    if not isinstance(r, ScalarRaster):
        raise FormatError(f"{path}: expected a scalar raster")
    if kind is not None and r.kind != kind:
        raise ContractViolation(f"{path}: expected a {kind.name.lower()} raster, "
                                f"got {r.kind.name.lower()}")
    return r


def cmd_synth(args):
    scenario, dims, gt, dates = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = type(scenario)(scenario.background_gamma, scenario.patches, args.seed)
    stack = build_stack(scenario, dims, gt, dates)
    os.makedirs(args.outdir, exist_ok=True)
    for name in ("pre1", "pre2", "post"):
        write_raster(getattr(stack, name), os.path.join(args.outdir, f"{name}.ccdr"))
    log.info("wrote %dx%d stack to %s", dims[0], dims[1], args.outdir)


def cmd_coherence(args):
    a, b = _scene(args.scene_a), _scene(args.scene_b)
    r = multilook(estimate_coherence(a, b, args.window), *args.looks)
    write_raster(r, args.output)


def cmd_ccd(args):
    pre = _scalar(args.coh_pre, RasterKind.COHERENCE)
    post = _scalar(args.coh_post, RasterKind.COHERENCE)
    write_raster(ccd(pre, post), args.output)


def cmd_stats(args):
    r = _scalar(args.raster)
    out = {}
    for fp in load_footprints(args.footprints):
        mask = rasterize_footprint(fp, r.geotransform, r.width, r.height)
        out[fp.asset_id] = asset_statistics(r, mask).to_dict()
    _write_text(args.output, _dump(jsonable(out)))


def _thresholds(path):
    return Thresholds.load(path) if path else default_thresholds()


def cmd_assess(args):
    coh_pre = _scalar(args.coh_pre, RasterKind.COHERENCE)
    coh_post = _scalar(args.coh_post, RasterKind.COHERENCE)
    ccd_r = _scalar(args.ccd, RasterKind.CCD)
    t = _thresholds(args.thresholds)
    rows = assess_rasters(coh_pre, coh_post, ccd_r, load_footprints(args.footprints), t)
    doc = {"thresholds": t.to_mapping(), "assessments": [a.to_dict() for a in rows]}
    _write_text(args.output, _dump(doc))


def _load_assessments(path):
    doc = _read_json(path, "assessments")
    try:
        return [AssetAssessment.from_dict(d) for d in doc["assessments"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"assessments: malformed document ({exc})") from None


def cmd_triage(args):
    assessments = _load_assessments(args.assessments)
    policy = load_policy(args.policy) if args.policy else TriagePolicy()
    conn = load_connectivity(args.connectivity) if args.connectivity else {}
    decisions = triage_all(assessments, policy, conn)
    doc = {"policy": policy.to_dict(), "decisions": [d.to_dict() for d in decisions]}
    _write_text(args.output, _dump(doc))


def cmd_report(args):
    assessments = _load_assessments(args.assessments)
    decisions, policy = [], None
    if args.decisions:
        doc = _read_json(args.decisions, "decisions")
        try:
            decisions = [TriageDecision.from_dict(d) for d in doc["decisions"]]
            policy = TriagePolicy.from_dict(doc["policy"]) if "policy" in doc else None
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"decisions: malformed document ({exc})") from None
    _write_text(args.output, emit_report(assessments, decisions, args.format, policy))


def cmd_info(args):
    print(f"ccdassess {__version__}; kernel backend: {_kernels.backend_name()} "
          f"(available: {', '.join(_kernels.available_backends())})")


def build_parser():
    p = argparse.ArgumentParser(prog="ccdassess", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--backend", choices=("python", "compiled"),
                   help="force a kernel backend (default: compiled when built)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="scenario document -> pre1/pre2/post scene files")
    s.add_argument("scenario")
    s.add_argument("-o", "--outdir", required=True)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("coherence", help="two scenes -> coherence raster")
    s.add_argument("scene_a")
    s.add_argument("scene_b")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--window", type=_window, default=EstimatorWindow(5, 5),
                   help="estimation window RxC, both odd (default 5x5)")
    s.add_argument("--looks", type=_looks, default=(1, 1),
                   help="multilook factors RxC applied after estimation (default 1x1)")
    s.set_defaults(func=cmd_coherence)

    s = sub.add_parser("ccd", help="pre and post coherence rasters -> CCD raster")
    s.add_argument("coh_pre")
    s.add_argument("coh_post")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_ccd)

    s = sub.add_parser("stats", help="raster + footprint file -> zonal statistics (JSON)")
    s.add_argument("raster")
    s.add_argument("footprints")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("assess", help="coherence/CCD rasters + footprints -> assessments")
    s.add_argument("--coh-pre", required=True)
    s.add_argument("--coh-post", required=True)
    s.add_argument("--ccd", required=True)
    s.add_argument("--footprints", required=True)
    s.add_argument("--thresholds")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_assess)

    s = sub.add_parser("triage", help="assessments + policy + connectivity -> decisions")
    s.add_argument("assessments")
    s.add_argument("--policy")
    s.add_argument("--connectivity")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_triage)

    s = sub.add_parser("report", help="assessments (+ decisions) -> CSV or JSON report")
    s.add_argument("assessments")
    s.add_argument("--decisions")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("info", help="show version and kernel backend")
    s.set_defaults(func=cmd_info)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.backend:
        try:
            _kernels.set_backend(args.backend)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONTRACT
    try:
        args.func(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
