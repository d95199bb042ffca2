"""Minimal WKT reader/writer for single-ring POLYGON footprints."""

from __future__ import annotations

import math
import re

from ..errors import InvalidPolygon, UnclosedRing, UnsupportedGeometry, WKTError, WKTSyntaxError
from ..scene import AssetFootprint

_WS = re.compile(rb"[ \t\r\n]*")
_WORD = re.compile(rb"[A-Za-z]+")
_NUMBER = re.compile(rb"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_GEOMETRY_WORDS = {b"POINT", b"LINESTRING", b"MULTIPOINT", b"MULTILINESTRING",
                   b"MULTIPOLYGON", b"GEOMETRYCOLLECTION", b"TRIANGLE", b"TIN",
                   b"POLYHEDRALSURFACE", b"CIRCULARSTRING", b"CURVEPOLYGON"}


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def skip_ws(self):
        self.pos = _WS.match(self.data, self.pos).end()

    def peek(self):
        self.skip_ws()
        return self.data[self.pos:self.pos + 1]

    def expect(self, ch):
        if self.peek() != ch:
            got = self.data[self.pos:self.pos + 1] or b"end of input"
            raise WKTSyntaxError(f"expected {ch.decode()!r}, found {got!r}", self.pos)
        self.pos += 1

    def word(self):
        self.skip_ws()
        m = _WORD.match(self.data, self.pos)
        if not m:
            return None, self.pos
        self.pos = m.end()
        return m.group().upper(), m.start()

    def number(self):
        self.skip_ws()
        m = _NUMBER.match(self.data, self.pos)
        if not m:
            raise WKTSyntaxError("expected a number", self.pos)
        value = float(m.group())
        if not math.isfinite(value):
            raise WKTSyntaxError("coordinate is not finite", self.pos)
        self.pos = m.end()
        return value


def parse_wkt(text):
    """Parse ``POLYGON((x y, ...))`` into a closed ring of ``(x, y)`` tuples.

    Offsets in raised errors are byte offsets into the UTF-8 encoded text.
    """
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    rd = _Reader(data)
    kw, at = rd.word()
    if kw is None:
        raise WKTSyntaxError("expected a geometry keyword", at)
    if kw != b"POLYGON":
        if kw in _GEOMETRY_WORDS:
            raise UnsupportedGeometry(f"{kw.decode()} is not supported, only POLYGON", at)
        raise WKTSyntaxError(f"unknown geometry keyword {kw.decode()!r}", at)
    if rd.peek().isalpha():
        tag, at = rd.word()
        if tag == b"EMPTY":
            raise UnsupportedGeometry("empty polygons are not supported", at)
        if tag in (b"Z", b"M", b"ZM"):
            raise UnsupportedGeometry("only 2-D coordinates are supported", at)
        raise WKTSyntaxError(f"unexpected word {tag.decode()!r}", at)
    rd.expect(b"(")
    ring_start = rd.pos
    rd.expect(b"(")
    ring = [_position(rd)]
    while rd.peek() == b",":
        rd.pos += 1
        ring.append(_position(rd))
    rd.expect(b")")
    if rd.peek() == b",":
        raise UnsupportedGeometry("polygons with inner rings are not supported", rd.pos)
    rd.expect(b")")
    rd.skip_ws()
    if rd.pos != len(data):
        raise WKTSyntaxError("trailing characters after geometry", rd.pos)
    if ring[0] != ring[-1]:
        raise UnclosedRing("first and last positions differ", ring_start)
    if len(ring) < 4:
        raise WKTSyntaxError(f"ring needs at least 4 positions, got {len(ring)}", ring_start)
    return tuple(ring)


def _position(rd):
    x = rd.number()
    start = rd.pos
    rd.skip_ws()
    if rd.pos == start and rd.data[rd.pos:rd.pos + 1] not in (b"",):
        # "1-2" style run-together numbers
        raise WKTSyntaxError("expected whitespace between coordinates", rd.pos)
    y = rd.number()
    nxt = rd.peek()
    if nxt and nxt not in (b",", b")"):
        if _NUMBER.match(rd.data, rd.pos):
            raise UnsupportedGeometry("only 2-D coordinates are supported", rd.pos)
        raise WKTSyntaxError(f"unexpected {nxt!r} in coordinate list", rd.pos)
    return (x, y)


def to_wkt(ring):
    body = ", ".join(f"{x!r} {y!r}" for x, y in ring)
    return f"POLYGON(({body}))"


def load_footprints(path):
    """Footprint file: ``asset_id<TAB>WKT`` per line; ``#`` comments allowed."""
    footprints = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if "\t" not in line:
                raise WKTSyntaxError(f"{path}:{lineno}: expected 'asset_id<TAB>WKT'")
            asset_id, wkt = line.split("\t", 1)
            asset_id = asset_id.strip()
            if not asset_id or asset_id in seen:
                raise WKTError(f"{path}:{lineno}: missing or duplicate asset id {asset_id!r}")
            seen.add(asset_id)
            try:
                ring = parse_wkt(wkt)
                footprints.append(AssetFootprint(asset_id, ring))
            except (WKTError, InvalidPolygon) as exc:
                raise type(exc)(f"{path}:{lineno}: {exc}") from None
    return footprints


def dump_footprints(footprints):
    return "".join(f"{f.asset_id}\t{to_wkt(f.ring)}\n" for f in footprints)
