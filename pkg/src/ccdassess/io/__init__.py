"""Readers and writers: WKT footprints, raster containers, reports, scenarios."""

from .raster import decode_raster, encode_raster, read_raster, write_raster
from .report import emit_report
from .wkt import load_footprints, parse_wkt, to_wkt

__all__ = ["decode_raster", "encode_raster", "read_raster", "write_raster",
           "emit_report", "load_footprints", "parse_wkt", "to_wkt"]
