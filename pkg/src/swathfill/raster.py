"""Core raster types and lossless image I/O.

A :class:`Raster` is an immutable 8-bit RGB image backed by a
``(height, width, 3)`` numpy array, optionally carrying the alpha plane
of the source file. A :class:`GapMask` is a boolean plane of the same
shape where ``True`` marks originally-valid pixels and ``False`` marks
gap pixels. Only lossless containers are accepted: PNG for regular use
and binary PPM (P6) as a debug format. Lossy input is rejected rather
than silently degraded, because gap detection relies on exact sentinel
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptFile, DimensionMismatch, UnsupportedFormat

# Rec. 601 luma weights, the fixed grayscale convention for every metric
# in this package.
_LUMA_WEIGHTS = (0.299, 0.587, 0.114)

_SAVE_FORMATS = {".png": "PNG", ".ppm": "PPM"}
_LOAD_FORMATS = {"PNG", "PPM"}


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SentinelColor:
    """Exact RGB triple that marks gap pixels, default black."""

    r: int = 0
    g: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v <= 255:
                raise ValueError(f"sentinel channel {name}={v!r} outside [0, 255]")

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.g, self.b], dtype=np.uint8)


BLACK = SentinelColor(0, 0, 0)


def _as_sentinel(value: "SentinelColor | tuple[int, int, int]") -> SentinelColor:
    if isinstance(value, SentinelColor):
        return value
    return SentinelColor(*value)


@dataclass(frozen=True, eq=False)
class Raster:
    """Immutable RGB8 image; ``alpha`` is kept only when the source had it."""

    pixels: np.ndarray
    alpha: np.ndarray | None = None

    def __post_init__(self) -> None:
        px = np.ascontiguousarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3 or px.dtype != np.uint8:
            raise ValueError(
                f"pixels must be (H, W, 3) uint8, got shape {self.pixels.shape} "
                f"dtype {self.pixels.dtype}"
            )
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("raster must contain at least one pixel")
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)
        if self.alpha is not None:
            al = np.ascontiguousarray(self.alpha)
            if al.shape != px.shape[:2] or al.dtype != np.uint8:
                raise ValueError("alpha must be (H, W) uint8 matching pixels")
            al.flags.writeable = False
            object.__setattr__(self, "alpha", al)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Raster):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class GapMask:
    """Boolean plane aligned to a raster; True = valid data, False = gap."""

    valid: np.ndarray

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(self.valid)
        if v.ndim != 2 or v.dtype != np.bool_:
            raise ValueError(
                f"valid must be a 2-D bool array, got shape {self.valid.shape} "
                f"dtype {self.valid.dtype}"
            )
        v.flags.writeable = False
        object.__setattr__(self, "valid", v)

    @property
    def width(self) -> int:
        return self.valid.shape[1]

    @property
    def height(self) -> int:
        return self.valid.shape[0]

    @property
    def gap_fraction(self) -> float:
        return float((~self.valid).sum()) / self.valid.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GapMask):
            return NotImplemented
        return np.array_equal(self.valid, other.valid)


def require_same_shape(raster: Raster, mask: GapMask) -> None:
    """Raise :class:`DimensionMismatch` unless raster and mask align."""
    if (raster.height, raster.width) != (mask.height, mask.width):
        raise DimensionMismatch(
            f"raster {raster.height}x{raster.width} vs mask {mask.height}x{mask.width}"
        )


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------


def mask_from_sentinel(
    raster: Raster, sentinel: SentinelColor | tuple[int, int, int] = BLACK
) -> GapMask:
    """Mark every pixel exactly equal to the sentinel triple as gap.

    Equality is exact on all three channels; no tolerance is applied.
    """
    s = _as_sentinel(sentinel)
    hit = np.all(raster.pixels == s.as_array(), axis=2)
    return GapMask(valid=~hit)


def to_grayscale(raster: Raster) -> np.ndarray:
    """Rec. 601 luminance (0.299 R + 0.587 G + 0.114 B) as float64.

    Returns:
        ``(H, W)`` float64 array; values are real-valued, not rounded.
    """
    px = raster.pixels.astype(np.float64)
    wr, wg, wb = _LUMA_WEIGHTS
    return wr * px[:, :, 0] + wg * px[:, :, 1] + wb * px[:, :, 2]


# ---------------------------------------------------------------------------
# Image I/O
# ---------------------------------------------------------------------------


def load_raster(path: str | Path) -> Raster:
    """Load a lossless RGB image.

    Accepts PNG and binary PPM, in RGB or RGBA mode. Anything lossy
    (JPEG in particular) or non-RGB (palette, grayscale) raises
    :class:`UnsupportedFormat`. Alpha, when present, is preserved on the
    returned raster; the RGB planes round-trip bit-exactly.

    Args:
        path: file to read.

    Returns:
        The decoded :class:`Raster`.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(str(path))
    try:
        with Image.open(path) as im:
            fmt = im.format
            if fmt not in _LOAD_FORMATS:
                raise UnsupportedFormat(f"{path}: {fmt or 'unknown'} is not a lossless RGB format")
            if im.mode not in ("RGB", "RGBA"):
                raise UnsupportedFormat(f"{path}: mode {im.mode} is not RGB (convert upstream)")
            arr = np.asarray(im)
    except UnidentifiedImageError as exc:
        raise CorruptFile(f"{path}: {exc}") from exc
    except OSError as exc:
        raise CorruptFile(f"{path}: truncated or undecodable image") from exc
    if arr.shape[2] == 4:
        return Raster(pixels=arr[:, :, :3].copy(), alpha=arr[:, :, 3].copy())
    return Raster(pixels=arr)


def save_raster(raster: Raster, path: str | Path) -> None:
    """Write a raster losslessly; the format follows the extension.

    ``.png`` writes PNG (RGBA when the raster carries alpha), ``.ppm``
    writes binary P6. Any other extension raises
    :class:`UnsupportedFormat` instead of guessing.
    """
    path = Path(path)
    fmt = _SAVE_FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise UnsupportedFormat(f"{path}: only .png and .ppm are written")
    if raster.alpha is not None and fmt == "PNG":
        data = np.dstack([raster.pixels, raster.alpha])
        im = Image.fromarray(data, mode="RGBA")
    else:
        im = Image.fromarray(np.asarray(raster.pixels), mode="RGB")
    path.parent.mkdir(parents=True, exist_ok=True)
    im.save(path, format=fmt)


def load_mask(path: str | Path) -> GapMask:
    """Read a mask stored as grayscale PNG: 255 = valid, 0 = gap."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(str(path))
    try:
        with Image.open(path) as im:
            if im.format != "PNG" or im.mode != "L":
                raise UnsupportedFormat(f"{path}: masks are 8-bit grayscale PNG")
            arr = np.asarray(im)
    except UnidentifiedImageError as exc:
        raise CorruptFile(f"{path}: {exc}") from exc
    return GapMask(valid=arr != 0)


def save_mask(mask: GapMask, path: str | Path) -> None:
    """Write a mask as grayscale PNG: 255 = valid, 0 = gap."""
    path = Path(path)
    if path.suffix.lower() != ".png":
        raise UnsupportedFormat(f"{path}: masks are written as .png only")
    arr = np.where(mask.valid, np.uint8(255), np.uint8(0))
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def save_radius_map(radii: np.ndarray, path: str | Path) -> None:
    """Write a per-pixel radius map as 16-bit grayscale PNG."""
    path = Path(path)
    if path.suffix.lower() != ".png":
        raise UnsupportedFormat(f"{path}: radius maps are written as .png only")
    arr = np.ascontiguousarray(radii, dtype=np.uint16)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr).save(path, format="PNG")


def load_radius_map(path: str | Path) -> np.ndarray:
    """Read a 16-bit grayscale radius map written by :func:`save_radius_map`."""
    with Image.open(Path(path)) as im:
        return np.asarray(im).astype(np.uint16)
