"""Gap detection and usability statistics.

Detection is exact: a pixel is a gap pixel when it equals the sentinel
triple on all three channels, or (optionally) when the source alpha is
zero. Connected components use 4-connectivity. An image stays usable
while gaps cover strictly less than a quarter of its area.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import BLACK, GapMask, Raster, SentinelColor, _as_sentinel

USABLE_LIMIT = 0.25

# 4-connected neighborhood for component labeling
_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=int)


@dataclass(frozen=True)
class GapStats:
    """Summary of the gap structure of one image."""

    gap_fraction: float
    component_count: int
    largest_component_fraction: float
    usable: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "gap_fraction": self.gap_fraction,
                "components": self.component_count,
                "largest_component_fraction": self.largest_component_fraction,
                "usable": self.usable,
            }
        )


def stats_from_mask(mask: GapMask) -> GapStats:
    """Compute :class:`GapStats` for an existing mask."""
    gap = ~mask.valid
    total = gap.size
    gap_count = int(gap.sum())
    if gap_count == 0:
        return GapStats(0.0, 0, 0.0, True)
    labels, n = ndimage.label(gap, structure=_CROSS)
    largest = int(np.bincount(labels.ravel())[1:].max())
    fraction = gap_count / total
    return GapStats(
        gap_fraction=fraction,
        component_count=int(n),
        largest_component_fraction=largest / total,
        usable=fraction < USABLE_LIMIT,
    )


def detect(
    raster: Raster,
    sentinel: SentinelColor | tuple[int, int, int] = BLACK,
    use_alpha: bool = False,
) -> tuple[GapMask, GapStats]:
    """Find gap pixels and summarize them.

    Args:
        raster: image to scan.
        sentinel: exact triple that marks no-data pixels.
        use_alpha: additionally treat alpha == 0 as gap when the raster
            carries an alpha plane.

    Returns:
        ``(mask, stats)``; the mask is False on detected gap pixels.
    """
    s = _as_sentinel(sentinel)
    gap = np.all(raster.pixels == s.as_array(), axis=2)
    if use_alpha and raster.alpha is not None:
        gap |= raster.alpha == 0
    mask = GapMask(valid=~gap)
    return mask, stats_from_mask(mask)
