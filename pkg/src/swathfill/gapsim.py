"""Synthetic swath-gap injection.

Gaps are square no-data regions painted with a sentinel color, sized by
an area fraction of the image and placed flush into one of the four
corners (or absent). For every source image the five positional
variants are produced in a fixed order so that batch outputs are
reproducible file-for-file. An arbitrary-polygon mode exists for
irregular gap shapes; it rasterizes by the even-odd rule over pixel
centers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GapTooLarge, InvalidPolygon
from .raster import (
    BLACK,
    GapMask,
    Raster,
    SentinelColor,
    _as_sentinel,
)

AREA_FRACTION_CAP = 0.25
DEFAULT_AREA_FRACTION = 0.20


class GapPosition(enum.Enum):
    """Where the square gap sits; order here is the variant order."""

    ABSENT = "none"
    UPPER_LEFT = "ul"
    UPPER_RIGHT = "ur"
    LOWER_LEFT = "ll"
    LOWER_RIGHT = "lr"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "GapPosition":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"unknown position token {token!r}")


VARIANT_ORDER = (
    GapPosition.ABSENT,
    GapPosition.UPPER_LEFT,
    GapPosition.UPPER_RIGHT,
    GapPosition.LOWER_LEFT,
    GapPosition.LOWER_RIGHT,
)


@dataclass(frozen=True)
class GapSpec:
    """Parameters for one gap injection.

    ``polygon`` switches to polygon mode when given; ``position`` and
    ``area_fraction`` then play no role in placement.
    """

    position: GapPosition = GapPosition.UPPER_LEFT
    area_fraction: float = DEFAULT_AREA_FRACTION
    sentinel: SentinelColor = field(default_factory=lambda: BLACK)
    polygon: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.area_fraction <= AREA_FRACTION_CAP:
            raise ValueError(
                f"area_fraction {self.area_fraction} outside (0, {AREA_FRACTION_CAP}]"
            )


@dataclass(frozen=True)
class GapVariant:
    """One produced variant plus the seed reserved for its downstream fill."""

    position: GapPosition
    raster: Raster
    mask: GapMask
    seed: int


def square_side(width: int, height: int, area_fraction: float) -> int:
    """Side of the square whose area best matches ``area_fraction``.

    Nearest-integer with halves rounding up, so the result is stable
    across platforms.
    """
    return int(math.floor(math.sqrt(area_fraction * width * height) + 0.5))


def contains_sentinel(
    raster: Raster, sentinel: SentinelColor | tuple[int, int, int] = BLACK
) -> bool:
    """True when any pixel already equals the sentinel triple."""
    s = _as_sentinel(sentinel)
    return bool(np.all(raster.pixels == s.as_array(), axis=2).any())


def _square_bounds(
    position: GapPosition, width: int, height: int, side: int
) -> tuple[int, int, int, int]:
    """Row/col slice bounds (r0, r1, c0, c1) for a flush corner square."""
    if position is GapPosition.UPPER_LEFT:
        return 0, side, 0, side
    if position is GapPosition.UPPER_RIGHT:
        return 0, side, width - side, width
    if position is GapPosition.LOWER_LEFT:
        return height - side, height, 0, side
    if position is GapPosition.LOWER_RIGHT:
        return height - side, height, width - side, width
    raise ValueError(f"no square placement for {position}")


def inject_gap(raster: Raster, spec: GapSpec) -> tuple[Raster, GapMask]:
    """Paint one gap into a copy of ``raster``.

    Square mode sizes the gap as ``square_side(...)`` and places it
    flush into the requested corner. The achieved gap fraction lands
    within 0.5% absolute of ``spec.area_fraction`` for image sizes where
    integer rounding permits it (tiny rasters cannot meet the tolerance
    and are not rejected). ``ABSENT`` returns the raster unchanged with
    an all-valid mask.

    Returns:
        ``(gapped_raster, mask)`` where the mask is False exactly on the
        painted region.

    Raises:
        GapTooLarge: square side exceeds a dimension, or a polygon gap
            covers more than the 25% area cap.
        InvalidPolygon: polygon mode with a degenerate polygon.
    """
    if spec.polygon is not None:
        return inject_polygon_gap(raster, spec.polygon, spec.sentinel)

    h, w = raster.height, raster.width
    if spec.position is GapPosition.ABSENT:
        return raster, GapMask(valid=np.ones((h, w), dtype=bool))

    side = square_side(w, h, spec.area_fraction)
    if side > w or side > h:
        raise GapTooLarge(f"square side {side} exceeds image {w}x{h}")
    if side < 1:
        raise ValueError(
            f"area_fraction {spec.area_fraction} yields an empty square on {w}x{h}"
        )
    r0, r1, c0, c1 = _square_bounds(spec.position, w, h, side)

    valid = np.ones((h, w), dtype=bool)
    valid[r0:r1, c0:c1] = False
    pixels = raster.pixels.copy()
    pixels[r0:r1, c0:c1] = spec.sentinel.as_array()
    return Raster(pixels=pixels, alpha=raster.alpha), GapMask(valid=valid)


def make_variants(
    raster: Raster,
    sentinel: SentinelColor | tuple[int, int, int] = BLACK,
    area_fraction: float = DEFAULT_AREA_FRACTION,
    base_seed: int = 0,
) -> list[GapVariant]:
    """Produce the five positional variants of one source image.

    Order is fixed: absent, upper-left, upper-right, lower-left,
    lower-right. Each variant carries a seed derived from ``base_seed``
    and its position index, so downstream fills are reproducible from
    the manifest alone. The whole operation is deterministic.
    """
    s = _as_sentinel(sentinel)
    out: list[GapVariant] = []
    for idx, position in enumerate(VARIANT_ORDER):
        spec = GapSpec(position=position, area_fraction=area_fraction, sentinel=s)
        gapped, mask = inject_gap(raster, spec)
        seed = int(
            np.random.SeedSequence(entropy=[int(base_seed) & (2**63 - 1), idx])
            .generate_state(1, dtype=np.uint64)[0]
        )
        out.append(GapVariant(position=position, raster=gapped, mask=mask, seed=seed))
    return out


# ---------------------------------------------------------------------------
# Polygon mode
# ---------------------------------------------------------------------------


def _orient(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    return (
        min(ax, bx) <= px <= max(ax, bx)
        and min(ay, by) <= py <= max(ay, by)
    )


def _segments_cross(a, b, c, d) -> bool:
    """True when segment ab intersects cd, touching included."""
    o1 = _orient(*a, *b, *c)
    o2 = _orient(*a, *b, *d)
    o3 = _orient(*c, *d, *a)
    o4 = _orient(*c, *d, *b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    for (p, q, r, o) in ((a, b, c, o1), (a, b, d, o2), (c, d, a, o3), (c, d, b, o4)):
        if o == 0 and _on_segment(*p, *q, *r):
            return True
    return False


def _check_simple(vertices: tuple[tuple[float, float], ...]) -> None:
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        if a == b:
            raise InvalidPolygon("repeated consecutive vertex")
        for j in range(i + 1, n):
            # skip edges sharing a vertex; they touch by construction
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            c, d = vertices[j], vertices[(j + 1) % n]
            if _segments_cross(a, b, c, d):
                raise InvalidPolygon(f"edges {i} and {j} intersect")


def polygon_interior_mask(
    vertices: tuple[tuple[float, float], ...], width: int, height: int
) -> np.ndarray:
    """Even-odd interior test of every pixel center against the polygon.

    Pixel (row r, col c) is tested at center (c + 0.5, r + 0.5). Centers
    exactly on an edge are excluded. Returns a bool array, True inside.
    """
    xs = np.arange(width, dtype=np.float64) + 0.5
    ys = np.arange(height, dtype=np.float64) + 0.5
    xc, yc = np.meshgrid(xs, ys)
    inside = np.zeros((height, width), dtype=bool)
    on_edge = np.zeros((height, width), dtype=bool)
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        # centers exactly on this edge are boundary, not interior
        cross = (x2 - x1) * (yc - y1) - (y2 - y1) * (xc - x1)
        on_edge |= (
            (cross == 0.0)
            & (xc >= min(x1, x2)) & (xc <= max(x1, x2))
            & (yc >= min(y1, y2)) & (yc <= max(y1, y2))
        )
        if y1 == y2:
            continue  # horizontal edges never flip ray parity
        cond = (y1 > yc) != (y2 > yc)
        xint = x1 + (yc - y1) * (x2 - x1) / (y2 - y1)
        inside ^= cond & (xc < xint)
    return inside & ~on_edge


def inject_polygon_gap(
    raster: Raster,
    vertices: "tuple[tuple[float, float], ...] | list[tuple[float, float]]",
    sentinel: SentinelColor | tuple[int, int, int] = BLACK,
) -> tuple[Raster, GapMask]:
    """Paint a polygonal gap; vertices are (x, y) in pixel coordinates.

    The polygon must be simple, have at least three vertices, and lie
    within the image bounds. The rasterized gap may cover at most the
    25% area cap.
    """
    verts = tuple((float(x), float(y)) for x, y in vertices)
    if len(verts) < 3:
        raise InvalidPolygon(f"need >= 3 vertices, got {len(verts)}")
    h, w = raster.height, raster.width
    for x, y in verts:
        if not (0.0 <= x <= w and 0.0 <= y <= h):
            raise InvalidPolygon(f"vertex ({x}, {y}) outside image {w}x{h}")
    _check_simple(verts)

    gap = polygon_interior_mask(verts, w, h)
    if not gap.any():
        raise InvalidPolygon("polygon interior covers no pixel centers")
    fraction = float(gap.sum()) / gap.size
    if fraction > AREA_FRACTION_CAP:
        raise GapTooLarge(f"polygon covers {fraction:.4f} > {AREA_FRACTION_CAP}")

    s = _as_sentinel(sentinel)
    pixels = raster.pixels.copy()
    pixels[gap] = s.as_array()
    return Raster(pixels=pixels, alpha=raster.alpha), GapMask(valid=~gap)
