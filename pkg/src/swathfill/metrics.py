"""Detectability metrics for filled gaps.

Two deterministic proxies quantify how much a filled region still
stands out:

* ``boundary_gradient_ratio``: mean Sobel gradient magnitude inside a
  two-pixel band straddling the gap boundary, divided by the mean over
  the valid interior away from that band. A seamless fill scores near
  1; a fill that paints an edge along the old boundary scores high.
* ``histogram_divergence``: Jensen-Shannon divergence (natural log,
  so bounded by ln 2) between the 8x8x8-binned RGB histograms of the
  filled region and of the valid region. A fill whose colors match the
  image scores near 0.

Both are pure functions of the filled raster and the mask; no RNG is
involved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DegenerateMask
from .fill import FillPolicy, NeighborConfig, fill
from .raster import GapMask, Raster, require_same_shape, to_grayscale

# Ratio reported when the boundary band has gradient energy but the
# interior has none at all (a perfectly flat image with a visible seam).
LARGE_RATIO = 1.0e9

_BINS_PER_CHANNEL = 8
_BIN_SHIFT = 256 // _BINS_PER_CHANNEL  # 32 levels per bin
_FULL_3X3 = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class DetectabilityReport:
    """Metric pair for one filled image."""

    boundary_gradient_ratio: float
    histogram_divergence: float
    gap_fraction: float

    def to_json(self, policy: str | None = None, seed: int | None = None) -> str:
        return json.dumps(
            {
                "boundary_gradient_ratio": self.boundary_gradient_ratio,
                "histogram_divergence": self.histogram_divergence,
                "gap_fraction": self.gap_fraction,
                "policy": policy,
                "seed": seed,
            }
        )


def boundary_band(mask: GapMask) -> np.ndarray:
    """Pixels within Chebyshev distance 1 of a gap/valid transition.

    One pixel of width on each side of the boundary, computed by
    dilating both regions with a full 3x3 structure and intersecting.
    """
    gap = ~mask.valid
    near_gap = ndimage.binary_dilation(gap, structure=_FULL_3X3)
    near_valid = ndimage.binary_dilation(mask.valid, structure=_FULL_3X3)
    return near_gap & near_valid


def _sobel_magnitude(gray: np.ndarray) -> np.ndarray:
    gx = ndimage.sobel(gray, axis=1, mode="reflect")
    gy = ndimage.sobel(gray, axis=0, mode="reflect")
    return np.hypot(gx, gy)


def _rgb_histogram(pixels: np.ndarray) -> np.ndarray:
    """Normalized 512-bin joint histogram of an (N, 3) uint8 pixel list."""
    q = pixels.astype(np.int64) // _BIN_SHIFT
    flat = (q[:, 0] * _BINS_PER_CHANNEL + q[:, 1]) * _BINS_PER_CHANNEL + q[:, 2]
    counts = np.bincount(flat, minlength=_BINS_PER_CHANNEL**3).astype(np.float64)
    return counts / counts.sum()


def jensen_shannon(p: np.ndarray, q: np.ndarray) -> float:
    """JS divergence in nats between two normalized histograms."""
    m = 0.5 * (p + q)
    # 0 * log(0/x) contributes nothing; mask those bins out
    pm = p > 0
    qm = q > 0
    kl_pm = float(np.sum(p[pm] * np.log(p[pm] / m[pm])))
    kl_qm = float(np.sum(q[qm] * np.log(q[qm] / m[qm])))
    return 0.5 * kl_pm + 0.5 * kl_qm


def evaluate(original: Raster, filled: Raster, mask: GapMask) -> DetectabilityReport:
    """Score how detectable the filled region is.

    ``original`` takes part only in shape validation: fills never modify
    valid pixels, so both metrics are functions of ``filled`` and
    ``mask`` alone.

    Raises:
        DegenerateMask: no gap pixels, no valid pixels, or no valid
            interior left once the boundary band is excluded.
    """
    require_same_shape(original, mask)
    require_same_shape(filled, mask)
    gap = ~mask.valid
    n_gap = int(gap.sum())
    n_valid = mask.valid.size - n_gap
    if n_gap == 0:
        raise DegenerateMask("mask contains no gap pixels")
    if n_valid == 0:
        raise DegenerateMask("mask contains no valid pixels")

    band = boundary_band(mask)
    interior = mask.valid & ~band
    if not interior.any():
        raise DegenerateMask("no valid interior beyond the boundary band")

    grad = _sobel_magnitude(to_grayscale(filled))
    band_mean = float(grad[band].mean())
    interior_mean = float(grad[interior].mean())
    if interior_mean == 0.0:
        ratio = 0.0 if band_mean == 0.0 else LARGE_RATIO
    else:
        ratio = band_mean / interior_mean

    divergence = jensen_shannon(
        _rgb_histogram(filled.pixels[gap]),
        _rgb_histogram(filled.pixels[mask.valid]),
    )

    return DetectabilityReport(
        boundary_gradient_ratio=ratio,
        histogram_divergence=divergence,
        gap_fraction=n_gap / mask.valid.size,
    )


def compare_policies(
    original: Raster,
    mask: GapMask,
    seeds: "list[int] | tuple[int, ...]",
    config: NeighborConfig | None = None,
) -> dict[FillPolicy, DetectabilityReport]:
    """Fill with every policy across ``seeds`` and average the metrics.

    Deterministic given the seed list. Returns one report per policy
    whose fields are the per-seed means.
    """
    if not seeds:
        raise ValueError("seeds must be non-empty")
    out: dict[FillPolicy, DetectabilityReport] = {}
    for policy in FillPolicy:
        ratios = []
        divergences = []
        fraction = 0.0
        for seed in seeds:
            filled, _ = fill(original, mask, policy, seed, config)
            report = evaluate(original, filled, mask)
            ratios.append(report.boundary_gradient_ratio)
            divergences.append(report.histogram_divergence)
            fraction = report.gap_fraction
        out[policy] = DetectabilityReport(
            boundary_gradient_ratio=float(np.mean(ratios)),
            histogram_divergence=float(np.mean(divergences)),
            gap_fraction=fraction,
        )
    return out
