"""``CCDR`` raster container.

Little-endian layout::

    offset  size  field
    0       4     magic b"CCDR"
    4       2     version (u16) = 1
    6       1     payload kind (u8): 0 complex64 (f32 pairs), 1 scalar f64
    7       1     scalar raster kind (u8): 0 other, 1 coherence, 2 CCD; 0 for complex
    8       8     width (u64)
    16      8     height (u64)
    24      48    geotransform, 6 x f64
    72      10    ISO date "YYYY-MM-DD", or 10 zero bytes
    82      ...   row-major payload; scalar no-data is NaN
"""

from __future__ import annotations

import datetime as _dt
import struct

import numpy as np

from ..errors import FormatError, MagicMismatch, TruncatedPayload, VersionUnsupported
from ..scene import ComplexScene, GeoTransform, RasterKind, ScalarRaster

MAGIC = b"CCDR"
VERSION = 1
_HEADER = struct.Struct("<4sHBBQQ6d10s")
HEADER_SIZE = _HEADER.size  # 82

PAYLOAD_COMPLEX = 0
PAYLOAD_SCALAR = 1


def _encode_date(d):
    return b"\0" * 10 if d is None else d.isoformat().encode("ascii")


def _decode_date(raw):
    if raw == b"\0" * 10:
        return None
    try:
        return _dt.date.fromisoformat(raw.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise FormatError(f"invalid date field {raw!r}") from None


def encode_raster(r):
    if isinstance(r, ComplexScene):
        kind, sub, date = PAYLOAD_COMPLEX, 0, r.acquisition_date
        payload = r.samples.astype("<c8", copy=False).tobytes()
    elif isinstance(r, ScalarRaster):
        kind, sub, date = PAYLOAD_SCALAR, int(r.kind), r.date
        payload = r.values.astype("<f8", copy=False).tobytes()
    else:
        raise TypeError(f"cannot encode {type(r).__name__}")
    head = _HEADER.pack(MAGIC, VERSION, kind, sub, r.width, r.height,
                        *r.geotransform.as_tuple(), _encode_date(date))
    return head + payload


def decode_raster(data):
    data = bytes(data)
    if len(data) < 4 or data[:4] != MAGIC:
        raise MagicMismatch(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
    if len(data) < HEADER_SIZE:
        raise TruncatedPayload(HEADER_SIZE, len(data), "header")
    magic, version, kind, sub, width, height, *rest = _HEADER.unpack_from(data)
    gt_coeffs, raw_date = rest[:6], rest[6]
    if version != VERSION:
        raise VersionUnsupported(f"container version {version} is not supported")
    if kind == PAYLOAD_COMPLEX:
        dtype = np.dtype("<c8")
    elif kind == PAYLOAD_SCALAR:
        dtype = np.dtype("<f8")
    else:
        raise FormatError(f"unknown payload kind {kind}")
    expected = width * height * dtype.itemsize
    actual = len(data) - HEADER_SIZE
    if actual < expected:
        raise TruncatedPayload(expected, actual)
    if actual > expected:
        raise FormatError(f"{actual - expected} trailing bytes after payload")
    gt = GeoTransform(*gt_coeffs)
    date = _decode_date(raw_date)
    arr = np.frombuffer(data, dtype=dtype, offset=HEADER_SIZE).reshape(height, width)
    if kind == PAYLOAD_COMPLEX:
        return ComplexScene(arr.astype(np.complex64), gt, date)
    try:
        rk = RasterKind(sub)
    except ValueError:
        raise FormatError(f"unknown scalar raster kind {sub}") from None
    return ScalarRaster(arr.astype(np.float64), gt, rk, date)


def write_raster(r, path):
    with open(path, "wb") as fh:
        fh.write(encode_raster(r))


def read_raster(path):
    with open(path, "rb") as fh:
        return decode_raster(fh.read())
