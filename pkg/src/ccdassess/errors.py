"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes):

* ``FormatError`` -- malformed input documents (WKT, raster containers,
  configuration files).  Exit code 2.
* ``ContractViolation`` -- well-formed inputs that break an invariant
  (mismatched rasters, bad windows, empty statistics...).  Exit code 3.
"""


class CCDError(Exception):
    """Base class for every error raised by this package."""


class FormatError(CCDError, ValueError):
    pass


class ContractViolation(CCDError, ValueError):
    pass


# -- scene model -------------------------------------------------------------

class DimensionMismatch(ContractViolation):
    pass


class GeotransformMismatch(ContractViolation):
    pass


class DateOrderViolation(ContractViolation):
    pass


class SingularTransform(ContractViolation):
    pass


class InvalidScene(ContractViolation):
    pass


class InvalidPolygon(ContractViolation):
    pass


# -- coherence ---------------------------------------------------------------

class DegenerateWindow(ContractViolation):
    pass


class DegenerateFactors(ContractViolation):
    pass


class KindMismatch(ContractViolation):
    pass


# -- classification / triage ---------------------------------------------------

class EmptyStats(ContractViolation):
    def __init__(self, message, asset_id=None):
        super().__init__(message)
        self.asset_id = asset_id


class InconsistentConnectivity(ContractViolation):
    pass


class ScenarioError(ContractViolation):
    pass


# -- parsers / containers ------------------------------------------------------

class WKTError(FormatError):
    """Any rejection by the WKT reader.  ``offset`` is a byte offset."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class WKTSyntaxError(WKTError):
    pass


class UnsupportedGeometry(WKTError):
    pass


class UnclosedRing(WKTError):
    pass


class MagicMismatch(FormatError):
    pass


class VersionUnsupported(FormatError):
    pass


class TruncatedPayload(FormatError):
    def __init__(self, expected, actual, what="payload"):
        super().__init__(
            f"truncated {what}: expected {expected} bytes, got {actual}")
        self.expected = expected
        self.actual = actual


class ConfigError(FormatError):
    pass
