"""Exception types shared across the package.

Builtin exceptions cover the generic cases (``FileNotFoundError``,
``OSError``, ``ValueError`` for malformed arguments); the classes here
name the domain failures that callers are expected to branch on.
"""


class SwathFillError(Exception):
    """Base class for all domain errors raised by this package."""


class UnsupportedFormat(SwathFillError):
    """Raised for lossy or non-RGB image input, or an unknown extension."""


class CorruptFile(SwathFillError):
    """Raised when an image file exists but cannot be decoded."""


class DimensionMismatch(SwathFillError):
    """Raised when a raster and a mask (or two rasters) disagree in shape."""


class NoValidSource(SwathFillError):
    """Raised when a fill needs source pixels but the mask leaves none."""


class GapTooLarge(SwathFillError):
    """Raised when a requested gap exceeds the image or the area cap."""


class InvalidPolygon(SwathFillError):
    """Raised for polygons that are degenerate, out of bounds, or self-intersecting."""


class DegenerateMask(SwathFillError):
    """Raised when a metric is undefined for the given mask (no gap, no
    valid region, or no interior left after band exclusion)."""
