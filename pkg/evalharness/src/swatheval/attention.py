"""Activation-map overlays and the gap-attention ratio.

The late conv features of a trained encoder show where the network
spends capacity. Channel-averaged activation magnitude, upsampled to
image size and min-max normalized, gives a [0, 1] attention map; the
ratio of its mean inside the gap to its mean outside is a one-number
proxy for how much the gap itself draws the network's attention. A
constant map normalizes to all 0.5 and scores exactly 1.0.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any

import numpy as np
import torch
from PIL import Image

from .data import load_gap_mask, load_image
from .model import GapAutoencoder, as_model


@dataclasses.dataclass(frozen=True)
class AttentionReport:
    """Mean normalized activation inside and outside the gap.

    Both means are finite and non-negative. ``gap_attention_ratio`` is
    in/out, or None when the outside mean is zero and the ratio is
    undefined.
    """

    mean_activation_in_gap: float
    mean_activation_outside_gap: float
    gap_attention_ratio: "float | None"

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def attention_from_map(act_map: np.ndarray, gap: np.ndarray) -> AttentionReport:
    """Score a normalized activation map against a boolean gap mask.

    ``gap`` is True on gap pixels. The mask must cover the same pixel
    grid as the map, mark at least one gap pixel, and leave at least one
    pixel outside the gap.
    """
    act = np.asarray(act_map, dtype=np.float64)
    gap = np.asarray(gap, dtype=bool)
    if act.shape != gap.shape:
        raise ValueError(f"map shape {act.shape} != mask shape {gap.shape}")
    if not gap.any():
        raise ValueError("mask marks no gap pixels")
    if gap.all():
        raise ValueError("mask marks every pixel as gap")
    mean_in = float(act[gap].mean())
    mean_out = float(act[~gap].mean())
    ratio = mean_in / mean_out if mean_out > 0 else None
    return AttentionReport(
        mean_activation_in_gap=mean_in,
        mean_activation_outside_gap=mean_out,
        gap_attention_ratio=ratio,
    )


def compute_activation_map(
    model: "GapAutoencoder | str | Path",
    image_path: "str | Path",
    layer: int = 3,
) -> np.ndarray:
    """Normalized [0, 1] attention map at the image's own resolution.

    Mean absolute feature response of the chosen encoder conv, upsampled
    bilinearly back to the input size. Works at any input size since
    only the conv stack runs.
    """
    net = as_model(model)
    arr = load_image(image_path)
    x = torch.from_numpy(arr).permute(2, 0, 1)[None]
    net.eval()
    with torch.no_grad():
        act = net.activations(x, layer=layer).abs().mean(dim=1, keepdim=True)
        act = torch.nn.functional.interpolate(
            act, size=x.shape[2:], mode="bilinear", align_corners=False
        )
    a = act[0, 0].numpy().astype(np.float64)
    lo, hi = float(a.min()), float(a.max())
    if hi > lo:
        return (a - lo) / (hi - lo)
    return np.full_like(a, 0.5)


def _heat_rgb(a: np.ndarray) -> np.ndarray:
    # compact blue-to-red ramp, HxWx3 in [0, 1]
    r = np.clip(1.5 - np.abs(4 * a - 3), 0, 1)
    g = np.clip(1.5 - np.abs(4 * a - 2), 0, 1)
    b = np.clip(1.5 - np.abs(4 * a - 1), 0, 1)
    return np.stack([r, g, b], axis=-1)


def activation_map(
    model: "GapAutoencoder | str | Path",
    image_path: "str | Path",
    mask_path: "str | Path",
    out_path: "str | Path | None" = None,
    layer: int = 3,
) -> tuple[AttentionReport, "Path | None"]:
    """Attention report for one image/mask pair, plus an overlay PNG.

    The mask is the batch layout's validity mask (dark = gap) and must
    match the image pixel-for-pixel; a size disagreement raises
    MaskMismatch. When ``out_path`` is given, the activation heat is
    blended over the image and written there at the input's exact size.
    """
    net = as_model(model)
    arr = load_image(image_path)
    h, w = arr.shape[:2]
    gap = load_gap_mask(mask_path, expect_size=(w, h))
    act = compute_activation_map(net, image_path, layer=layer)
    report = attention_from_map(act, gap)

    written = None
    if out_path is not None:
        overlay = 0.55 * arr.astype(np.float64) + 0.45 * _heat_rgb(act)
        out = np.clip(overlay * 255.0, 0, 255).astype(np.uint8)
        written = Path(out_path)
        written.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(out).save(written)
    return report, written
