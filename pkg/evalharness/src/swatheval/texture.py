"""Seeded texture corpus for retrieval experiments.

Seven procedural families in which class identity is carried by layout
alone: every image draws its two colors from one shared, saturated pool,
so palette statistics say nothing about the class, and a smooth
illumination ramp crosses each frame in a random direction, so local
color statistics differ from any global draw. Retrieval that merely
matches palettes scores at chance here; matching a class means matching
structure, and judging a fill means judging how well it continues the
local shading of its own image.

Layout matches what the fill pipeline's CLI expects:
``root/<class>/<class>_NN.png``, fully determined by the seed.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

CLASS_NAMES = (
    "grid",
    "rings",
    "spots",
    "stripes_d",
    "stripes_h",
    "stripes_v",
    "waves",
)

# channel floor keeps every pixel clear of the black no-data sentinel
_CHANNEL_LO = 8
_CHANNEL_HI = 247


def _one_color(rng: np.random.Generator) -> np.ndarray:
    # shell of the color cube: decidedly non-gray draws from one pool
    for _ in range(200):
        c = rng.uniform(0.12, 0.88, size=3)
        if np.linalg.norm(c - 0.5) >= 0.35:
            return c
    return c


def _pool_colors(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    # two colors from the common pool, contrast floor so texture is visible
    for _ in range(200):
        c0 = _one_color(rng)
        c1 = _one_color(rng)
        if np.linalg.norm(c0 - c1) >= 0.45:
            return c0, c1
    return c0, c1


def _smooth_noise(h: int, w: int, cell: float, rng: np.random.Generator) -> np.ndarray:
    """Bilinear-upsampled coarse noise in [0, 1); smooth at scale ``cell``."""
    gh = int(h / cell) + 2
    gw = int(w / cell) + 2
    grid = rng.random((gh, gw))
    ys = np.arange(h) / cell
    xs = np.arange(w) / cell
    y0 = ys.astype(int)
    x0 = xs.astype(int)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    a = grid[np.ix_(y0, x0)]
    b = grid[np.ix_(y0, x0 + 1)]
    c = grid[np.ix_(y0 + 1, x0)]
    d = grid[np.ix_(y0 + 1, x0 + 1)]
    return a * (1 - fy) * (1 - fx) + b * (1 - fy) * fx + c * fy * (1 - fx) + d * fy * fx


def _field(name: str, h: int, w: int, rng: np.random.Generator) -> np.ndarray:
    """Structural mixing field in [0, 1] that defines the class."""
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    period = rng.uniform(9, 17)
    phase = rng.uniform(0, 2 * np.pi)
    if name == "stripes_h":
        angle = np.pi / 2 + rng.uniform(-0.2, 0.2)
    elif name == "stripes_v":
        angle = rng.uniform(-0.2, 0.2)
    elif name == "stripes_d":
        angle = np.pi / 4 + rng.uniform(-0.2, 0.2) + (np.pi / 2 if rng.random() < 0.5 else 0.0)
    elif name == "rings":
        cy = rng.uniform(0.2, 0.8) * h
        cx = rng.uniform(0.2, 0.8) * w
        r = np.hypot(ys - cy, xs - cx)
        return 0.5 + 0.5 * np.sin(2 * np.pi * r / period + phase)
    elif name == "waves":
        meander = rng.uniform(5, 11)
        u = xs + meander * np.sin(2 * np.pi * ys / rng.uniform(24, 44))
        return 0.5 + 0.5 * np.sin(2 * np.pi * u / period + phase)
    elif name == "grid":
        pitch = rng.uniform(11, 19)
        ph = rng.uniform(0, pitch, size=2)
        line_y = np.cos(np.pi * (ys + ph[0]) / pitch) ** 2
        line_x = np.cos(np.pi * (xs + ph[1]) / pitch) ** 2
        return np.clip(line_y ** 4 + line_x ** 4, 0, 1)
    elif name == "spots":
        pitch = rng.uniform(12, 20)
        ph = rng.uniform(0, pitch, size=2)
        dy = (ys + ph[0]) % pitch - pitch / 2
        dx = (xs + ph[1]) % pitch - pitch / 2
        d = np.hypot(dy, dx)
        t = np.clip(1.0 - d / (0.45 * pitch), 0.0, 1.0)
        return 0.5 - 0.5 * np.cos(np.pi * t)
    else:
        raise ValueError(f"unknown class {name!r}; choose from {CLASS_NAMES}")
    u = xs * np.cos(angle) + ys * np.sin(angle)
    return 0.5 + 0.5 * np.sin(2 * np.pi * u / period + phase)


def _ramp(h: int, w: int, rng: np.random.Generator) -> np.ndarray:
    """Illumination drift across the frame in a random direction."""
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    angle = rng.uniform(0, 2 * np.pi)
    u = (xs * np.cos(angle) + ys * np.sin(angle)) / np.hypot(h, w)
    u = (u - u.min()) / (u.max() - u.min())
    amp = rng.uniform(0.35, 0.60)
    return 1.0 - amp / 2 + amp * u


def make_image(class_name: str, seed: int, size: int = 64) -> np.ndarray:
    """One deterministic image of the given class, as HxWx3 uint8."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    c0, c1 = _pool_colors(rng)
    t = _field(class_name, size, size, rng)
    t = np.clip(0.85 * t + 0.15 * _smooth_noise(size, size, rng.uniform(6, 10), rng), 0, 1)
    img = c0[None, None, :] * (1.0 - t[..., None]) + c1[None, None, :] * t[..., None]
    img = img * _ramp(size, size, rng)[..., None]
    img = img * 255.0 + rng.normal(0.0, 2.5, size=img.shape)
    return np.clip(img, _CHANNEL_LO, _CHANNEL_HI).astype(np.uint8)


def make_texture_corpus(
    root: "str | Path",
    seed: int = 0,
    classes: tuple[str, ...] = CLASS_NAMES,
    images_per_class: int = 5,
    size: int = 64,
) -> list[Path]:
    """Write a class-per-subdirectory corpus of texture PNGs.

    Fully determined by ``seed``; returns the written paths sorted.
    """
    root = Path(root)
    paths: list[Path] = []
    for ci, name in enumerate(classes):
        for ii in range(images_per_class):
            child = int(np.random.SeedSequence(entropy=[int(seed), ci, ii]).generate_state(1)[0])
            arr = make_image(name, child, size=size)
            path = root / name / f"{name}_{ii:02d}.png"
            path.parent.mkdir(parents=True, exist_ok=True)
            Image.fromarray(arr).save(path)
            paths.append(path)
    return sorted(paths)
