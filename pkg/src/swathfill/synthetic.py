"""Seeded synthetic imagery for tests and demos.

Seven procedural texture families stand in for land-cover classes.
Every image mixes smooth gradients with repeating texture so that local
color statistics differ from any one global draw, while the palette
stays spatially stationary; patterns repeat across the frame instead of
drifting from one edge to the other. Per-image parameters (palette
jitter, period, phase, orientation) vary widely within a class, so two
images of one class share a motif but not exact colors.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .raster import Raster, save_raster

CLASS_NAMES = (
    "airplane",
    "beach",
    "forest",
    "harbor",
    "freeway",
    "river",
    "storagetanks",
)


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


def _wave(h: int, w: int, period: float, angle: float, phase: float) -> np.ndarray:
    """Directional sinusoid in [0, 1]."""
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    u = xs * np.cos(angle) + ys * np.sin(angle)
    return 0.5 + 0.5 * np.sin(2 * np.pi * u / period + phase)


def _grid_bumps(h: int, w: int, pitch: float, radius: float, phase: tuple[float, float]) -> np.ndarray:
    """Periodic round domes in [0, 1], one per grid cell."""
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    dy = (ys + phase[0]) % pitch - pitch / 2
    dx = (xs + phase[1]) % pitch - pitch / 2
    d = np.hypot(dy, dx)
    t = np.clip(1.0 - d / radius, 0.0, 1.0)
    return 0.5 - 0.5 * np.cos(np.pi * t)


def _jitter(rng: np.random.Generator, color: tuple[float, float, float], spread: float) -> np.ndarray:
    base = np.asarray(color, dtype=np.float64)
    return base + rng.uniform(-spread, spread, size=3)


def _mix(t: np.ndarray, c0: np.ndarray, c1: np.ndarray) -> np.ndarray:
    return c0[None, None, :] * (1.0 - t[:, :, None]) + c1[None, None, :] * t[:, :, None]


def _finish(img: np.ndarray, rng: np.random.Generator) -> Raster:
    # keep channel 1..254: never the black sentinel, never clipped flat
    img = img + rng.normal(0.0, 2.5, size=img.shape)
    return Raster(pixels=np.clip(img, 1, 254).astype(np.uint8))


def _beach(rng: np.random.Generator, h: int, w: int) -> Raster:
    sand = _jitter(rng, (214, 189, 143), 28)
    water = _jitter(rng, (110, 160, 185), 30)
    period = rng.uniform(26, 46)
    angle = rng.uniform(0.3, 1.2)
    bands = _wave(h, w, period, angle, rng.uniform(0, 2 * np.pi))
    ripple = _smooth_noise(h, w, rng.uniform(8, 14), rng)
    t = np.clip(0.75 * bands + 0.25 * ripple, 0, 1)
    return _finish(_mix(t, sand, water), rng)


def _forest(rng: np.random.Generator, h: int, w: int) -> Raster:
    dark = _jitter(rng, (28, 72, 38), 16)
    light = _jitter(rng, (92, 142, 70), 24)
    canopy = _smooth_noise(h, w, rng.uniform(10, 18), rng)
    detail = _smooth_noise(h, w, rng.uniform(4, 7), rng)
    t = np.clip(0.7 * canopy + 0.3 * detail, 0, 1)
    return _finish(_mix(t, dark, light), rng)


def _harbor(rng: np.random.Generator, h: int, w: int) -> Raster:
    water = _jitter(rng, (58, 84, 118), 20)
    dock = _jitter(rng, (176, 170, 158), 22)
    pitch = rng.uniform(22, 34)
    ph = rng.uniform(0, pitch, size=2)
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    line_y = np.cos(2 * np.pi * (ys + ph[0]) / pitch) ** 8
    line_x = np.cos(2 * np.pi * (xs + ph[1]) / pitch) ** 8
    lines = np.clip(line_y + line_x, 0, 1)
    swell = 0.25 * _smooth_noise(h, w, rng.uniform(9, 15), rng)
    t = np.clip(lines + swell, 0, 1)
    return _finish(_mix(t, water, dock), rng)


def _freeway(rng: np.random.Generator, h: int, w: int) -> Raster:
    asphalt = _jitter(rng, (96, 96, 102), 18)
    paint = _jitter(rng, (188, 184, 170), 20)
    period = rng.uniform(30, 52)
    angle = rng.uniform(-0.6, 0.6) + (np.pi / 2 if rng.random() < 0.5 else 0.0)
    lanes = _wave(h, w, period, angle, rng.uniform(0, 2 * np.pi)) ** rng.uniform(5, 9)
    wear = 0.3 * _smooth_noise(h, w, rng.uniform(7, 12), rng)
    t = np.clip(lanes + wear, 0, 1)
    return _finish(_mix(t, asphalt, paint), rng)


def _river(rng: np.random.Generator, h: int, w: int) -> Raster:
    deep = _jitter(rng, (30, 76, 96), 18)
    shallow = _jitter(rng, (96, 158, 150), 26)
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    period = rng.uniform(30, 50)
    meander = rng.uniform(6, 14)
    u = xs + meander * np.sin(2 * np.pi * ys / rng.uniform(48, 90))
    bands = 0.5 + 0.5 * np.sin(2 * np.pi * u / period + rng.uniform(0, 2 * np.pi))
    t = np.clip(0.8 * bands + 0.2 * _smooth_noise(h, w, rng.uniform(8, 13), rng), 0, 1)
    return _finish(_mix(t, deep, shallow), rng)


def _storagetanks(rng: np.random.Generator, h: int, w: int) -> Raster:
    ground = _jitter(rng, (150, 132, 104), 22)
    lid = _jitter(rng, (210, 208, 200), 20)
    pitch = rng.uniform(30, 46)
    bumps = _grid_bumps(h, w, pitch, rng.uniform(0.30, 0.42) * pitch,
                        (rng.uniform(0, pitch), rng.uniform(0, pitch)))
    dirt = 0.2 * _smooth_noise(h, w, rng.uniform(9, 15), rng)
    t = np.clip(bumps + dirt, 0, 1)
    return _finish(_mix(t, ground, lid), rng)


def _airplane(rng: np.random.Generator, h: int, w: int) -> Raster:
    apron = _jitter(rng, (168, 170, 176), 18)
    marks = _jitter(rng, (228, 228, 224), 14)
    pitch = rng.uniform(36, 56)
    ph = (rng.uniform(0, pitch), rng.uniform(0, pitch))
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    dy = np.abs((ys + ph[0]) % pitch - pitch / 2)
    dx = np.abs((xs + ph[1]) % pitch - pitch / 2)
    arm = pitch * rng.uniform(0.28, 0.38)
    thick = pitch * rng.uniform(0.05, 0.09)
    cross = np.maximum(
        np.clip(1 - dy / thick, 0, 1) * np.clip(1 - dx / arm, 0, 1),
        np.clip(1 - dx / thick, 0, 1) * np.clip(1 - dy / arm, 0, 1),
    )
    shade = 0.2 * _smooth_noise(h, w, rng.uniform(10, 16), rng)
    t = np.clip(cross + shade, 0, 1)
    return _finish(_mix(t, apron, marks), rng)


_BUILDERS = {
    "airplane": _airplane,
    "beach": _beach,
    "forest": _forest,
    "harbor": _harbor,
    "freeway": _freeway,
    "river": _river,
    "storagetanks": _storagetanks,
}


def make_image(class_name: str, seed: int, size: int = 256) -> Raster:
    """One deterministic synthetic image of the given class."""
    builder = _BUILDERS.get(class_name)
    if builder is None:
        raise ValueError(f"unknown class {class_name!r}; choose from {CLASS_NAMES}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    return builder(rng, size, size)


def make_corpus(
    root: str | Path,
    seed: int = 0,
    classes: tuple[str, ...] = CLASS_NAMES,
    images_per_class: int = 5,
    size: int = 256,
) -> list[Path]:
    """Write a class-per-subdirectory corpus of synthetic PNGs.

    Layout matches what the CLI expects: ``root/<class>/<class>_NN.png``.
    Fully determined by ``seed``; returns the written paths in sorted
    order.
    """
    root = Path(root)
    paths: list[Path] = []
    for ci, name in enumerate(classes):
        for ii in range(images_per_class):
            child = int(
                np.random.SeedSequence(entropy=[int(seed) & (2**63 - 1), ci, ii])
                .generate_state(1, dtype=np.uint64)[0]
            )
            raster = make_image(name, child, size=size)
            path = root / name / f"{name}_{ii:02d}.png"
            save_raster(raster, path)
            paths.append(path)
    return sorted(paths)
