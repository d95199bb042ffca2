"""Table-style CSV and JSON reports."""

from __future__ import annotations

import csv
import io
import json
import math
import re

CSV_HEADER = ("asset_id", "coh_before_2sigma", "coh_after_2sigma",
              "coh_before_max", "coh_after_max", "ccd_2sigma", "ccd_max", "lkn", "dl")


def asset_sort_key(asset_id):
    """Natural order: B2 sorts before B10."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t)
            for t in re.findall(r"\d+|\D+", asset_id)]


def fmt3(x):
    return f"{x:.3f}"


def report_row(a):
    return (a.asset_id,
            fmt3(a.coh_before.two_sigma_adjusted), fmt3(a.coh_after.two_sigma_adjusted),
            fmt3(a.coh_before.max), fmt3(a.coh_after.max),
            fmt3(a.ccd.two_sigma_adjusted), fmt3(a.ccd.max),
            a.lkn.label, a.dl.label)


def jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def emit_report(assessments, decisions=(), fmt="csv", policy=None):
    assessments = sorted(assessments, key=lambda a: asset_sort_key(a.asset_id))
    if not assessments:
        raise ValueError("report needs at least one assessment")
    by_id = {d.asset_id: d for d in decisions}
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for a in assessments:
            w.writerow(report_row(a))
        return buf.getvalue()
    if fmt == "json":
        rows = []
        for a in assessments:
            row = dict(zip(CSV_HEADER, report_row(a)))
            row["stats"] = {k: a.to_dict()[k] for k in ("coh_before", "coh_after", "ccd")}
            d = by_id.get(a.asset_id)
            if d is not None:
                row["verdict"] = d.verdict.value
                row["trace"] = [t.to_dict() for t in d.trace]
            rows.append(row)
        doc = {"assets": rows}
        if policy is not None:
            doc["policy"] = policy.to_dict()
        return json.dumps(jsonable(doc), indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
