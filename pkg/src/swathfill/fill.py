"""Gap fill policies.

Three policies turn a gapped raster back into a complete image without
ever touching a valid pixel:

* uniform random: every gap pixel gets three channel values drawn
  independently and uniformly from [0, 255];
* pixel sampling: every gap pixel gets the whole RGB triple of one
  originally-valid pixel chosen uniformly at random, so the fill
  reproduces the image's empirical color distribution including
  channel correlations;
* neighbor sampling: every gap pixel copies a nearby originally-valid
  pixel, found by drawing candidate positions from a growing Chebyshev
  window, so the fill reproduces local color statistics.

All policies are deterministic in (image, mask, seed, config): one
``numpy.random.Generator`` over PCG64 is created per call and consumed
in a documented order. Sources are always the originally-valid pixels;
pixels filled earlier in a pass never feed later draws.
"""

from __future__ import annotations

import enum
import json
import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import NoValidSource
from .raster import GapMask, Raster, require_same_shape


class FillPolicy(enum.Enum):
    """Closed set of fill strategies."""

    RANDOM_RGB = "random"
    PIXEL_RGB = "pixel"
    NEIGHBOR_RGB = "neighbor"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "FillPolicy":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"unknown policy token {token!r}")


@dataclass(frozen=True)
class NeighborConfig:
    """Tuning knobs for the neighbor policy.

    ``initial_radius`` of None selects the distance-transform mode: each
    gap pixel starts at its Chebyshev distance to the nearest
    originally-valid pixel, so border pixels search tight windows while
    deep pixels start wide enough to reach data at all. A positive
    integer fixes the starting radius instead (ablation mode).
    """

    draws_per_radius: int = 3
    radius_growth: float = 2.0
    initial_radius: int | None = None

    def __post_init__(self) -> None:
        if self.draws_per_radius < 1:
            raise ValueError("draws_per_radius must be >= 1")
        if not self.radius_growth > 1.0:
            raise ValueError("radius_growth must exceed 1.0 for the search to make progress")
        if self.initial_radius is not None and self.initial_radius < 1:
            raise ValueError("fixed initial_radius must be >= 1")


@dataclass(frozen=True, eq=False)
class FillReport:
    """What a fill did; ``elapsed_ms`` is wall-clock and thus the one
    field that varies between reruns."""

    policy: FillPolicy
    seed: int
    pixels_filled: int
    elapsed_ms: float
    neighbor_final_radii: np.ndarray | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "policy": self.policy.token,
                "seed": self.seed,
                "pixels_filled": self.pixels_filled,
                "elapsed_ms": self.elapsed_ms,
            }
        )


def fill_random_rgb(raster: Raster, mask: GapMask, seed: int) -> tuple[Raster, FillReport]:
    """Fill each gap pixel with three independent uniform draws.

    Stream order: gap pixels row-major, one batched draw of shape
    ``(n_gap, 3)`` from the per-call generator.
    """
    require_same_shape(raster, mask)
    t0 = time.perf_counter()
    gap = ~mask.valid
    n_gap = int(gap.sum())
    rng = np.random.Generator(np.random.PCG64(seed))
    out = raster.pixels.copy()
    out[gap] = rng.integers(0, 256, size=(n_gap, 3), dtype=np.uint8)
    report = FillReport(
        policy=FillPolicy.RANDOM_RGB,
        seed=int(seed),
        pixels_filled=n_gap,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )
    return Raster(pixels=out, alpha=raster.alpha), report


def fill_pixel_rgb(raster: Raster, mask: GapMask, seed: int) -> tuple[Raster, FillReport]:
    """Fill each gap pixel with the full triple of one valid pixel.

    Sampling is uniform with replacement over the originally-valid
    pixels; the triple stays joint rather than per-channel, so filled
    colors always exist somewhere in the source. Stream order: gap
    pixels row-major, one batched index draw.
    """
    require_same_shape(raster, mask)
    t0 = time.perf_counter()
    gap = ~mask.valid
    n_gap = int(gap.sum())
    sources = raster.pixels[mask.valid]
    if n_gap > 0 and len(sources) == 0:
        raise NoValidSource("mask leaves no valid pixels to sample from")
    rng = np.random.Generator(np.random.PCG64(seed))
    out = raster.pixels.copy()
    if n_gap > 0:
        idx = rng.integers(0, len(sources), size=n_gap)
        out[gap] = sources[idx]
    report = FillReport(
        policy=FillPolicy.PIXEL_RGB,
        seed=int(seed),
        pixels_filled=n_gap,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )
    return Raster(pixels=out, alpha=raster.alpha), report


def fill_neighbor_rgb(
    raster: Raster,
    mask: GapMask,
    seed: int,
    config: NeighborConfig | None = None,
) -> tuple[Raster, FillReport]:
    """Fill each gap pixel from a randomly probed Chebyshev window.

    For each gap pixel, in row-major order:

    1. start at the initial radius (see :class:`NeighborConfig`);
    2. draw up to ``draws_per_radius`` candidate positions uniformly
       from the Chebyshev-radius window centered on the pixel, the
       center itself excluded; a draw landing out of bounds or on a gap
       pixel fails (out-of-bounds positions are not clamped);
    3. the first originally-valid candidate is copied and its radius
       recorded; otherwise the radius grows by ``ceil(r * growth)``,
       capped at max(width, height), and step 2 repeats. At the cap the
       window spans the whole image, so a valid source is eventually
       drawn.

    Stream order: each round consumes exactly ``draws_per_radius``
    values from the per-call generator, even when an early candidate is
    accepted; this keeps consumption independent of mask content that
    later draws would have seen.

    Returns:
        ``(filled, report)`` with ``report.neighbor_final_radii`` an
        ``(H, W)`` uint16 map, zero outside the gap.
    """
    require_same_shape(raster, mask)
    cfg = config or NeighborConfig()
    t0 = time.perf_counter()

    valid = mask.valid
    h, w = valid.shape
    gap_ys, gap_xs = np.nonzero(~valid)  # np.nonzero scans row-major
    n_gap = len(gap_ys)
    if n_gap > 0 and not valid.any():
        raise NoValidSource("mask leaves no valid pixels to sample from")

    out = raster.pixels.copy()
    radii = np.zeros((h, w), dtype=np.uint16)
    cap = max(h, w)
    draws = cfg.draws_per_radius
    growth = cfg.radius_growth

    if cfg.initial_radius is None:
        # Chebyshev distance of every gap pixel to the nearest valid one
        dist = ndimage.distance_transform_cdt(~valid, metric="chessboard")
        init_r = dist[gap_ys, gap_xs].tolist()
    else:
        fixed_r = min(cfg.initial_radius, cap)
        init_r = [fixed_r] * n_gap

    rng = np.random.Generator(np.random.PCG64(seed))
    integers = rng.integers
    # flat copies keep the hot loop on plain Python ints
    valid_flat = valid.ravel().tolist()
    ys_list = gap_ys.tolist()
    xs_list = gap_xs.tolist()
    src_idx = np.empty(n_gap, dtype=np.int64)
    final_r = np.empty(n_gap, dtype=np.uint16)

    for i in range(n_gap):
        y = ys_list[i]
        x = xs_list[i]
        r = init_r[i]
        if r > cap:
            r = cap
        while True:
            side = 2 * r + 1
            n_cells = side * side - 1  # window minus its center
            center = n_cells // 2
            ks = integers(0, n_cells, size=draws).tolist()
            found = False
            for k in ks:
                if k >= center:
                    k += 1  # skip the center cell, keeping the draw uniform
                yy = y + k // side - r
                xx = x + k % side - r
                if yy < 0 or yy >= h or xx < 0 or xx >= w:
                    continue
                flat = yy * w + xx
                if valid_flat[flat]:
                    src_idx[i] = flat
                    final_r[i] = r
                    found = True
                    break
            if found:
                break
            if r < cap:
                r = min(math.ceil(r * growth), cap)

    if n_gap > 0:
        flat_px = raster.pixels.reshape(-1, 3)
        out.reshape(-1, 3)[gap_ys * w + gap_xs] = flat_px[src_idx]
        radii[gap_ys, gap_xs] = final_r

    report = FillReport(
        policy=FillPolicy.NEIGHBOR_RGB,
        seed=int(seed),
        pixels_filled=n_gap,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        neighbor_final_radii=radii,
    )
    return Raster(pixels=out, alpha=raster.alpha), report


def fill(
    raster: Raster,
    mask: GapMask,
    policy: FillPolicy,
    seed: int,
    config: NeighborConfig | None = None,
) -> tuple[Raster, FillReport]:
    """Dispatch to one policy; ``config`` only applies to neighbor fill."""
    if policy is FillPolicy.RANDOM_RGB:
        return fill_random_rgb(raster, mask, seed)
    if policy is FillPolicy.PIXEL_RGB:
        return fill_pixel_rgb(raster, mask, seed)
    if policy is FillPolicy.NEIGHBOR_RGB:
        return fill_neighbor_rgb(raster, mask, seed, config)
    raise ValueError(f"unknown policy {policy!r}")
