"""Exception hierarchy for the dcdt package."""


class DcdtError(Exception):
    """Base class for all errors raised by this package."""


class JpegError(DcdtError):
    """Base class for JPEG bitstream and coefficient-container errors."""


class MalformedMarkerError(JpegError):
    """A required marker is missing, misplaced, or carries a bad payload."""


class UnsupportedFeatureError(JpegError):
    """The stream is valid JPEG but uses a feature outside the baseline
    sequential grayscale subset (progressive, arithmetic coding, color,
    12-bit precision, oversized frames)."""


class TruncatedStreamError(JpegError):
    """The stream ended before the expected data was read."""


class InvalidHuffmanCodeError(JpegError):
    """The entropy-coded segment contains an undecodable or out-of-range
    code word."""


class CoefficientRangeError(JpegError):
    """A coefficient (or DC differential) cannot be represented in the
    baseline entropy coder."""


class SidecarError(JpegError):
    """Bad magic or length mismatch in a coefficient sidecar file."""


class ConstraintError(DcdtError):
    """Base class for numeric and configuration constraint violations."""


class TargetUnreachableError(ConstraintError):
    """The requested payload exceeds the entropy capacity of the cost map."""


class DegenerateCostsError(ConstraintError):
    """Every coefficient is wet; no embedding change is admissible."""


class UnknownQuantTableError(ConstraintError):
    """No exponent parameter can be derived from the quantization table."""
