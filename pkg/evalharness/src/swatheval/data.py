"""File-level access to the fill pipeline's batch output.

Everything this package knows about imagery comes in through files laid
out by the ``swathfill batch`` command: gap variants under
``<root>/<class>/``, masks under ``<root>/masks/<class>/``, fills under
``<root>/filled/<policy>/<class>/``, plus the ``split_train.txt`` /
``split_val.txt`` listings. Class labels are directory names; the gap
position rides in the ``__<pos>`` filename suffix. No other interface
to the fill pipeline is used anywhere in this package.

Five dataset views are derived from that layout, one per table row:

* ``original``: the gap-free ``__none`` variants;
* ``nofill``: the gapped, unfilled variants;
* ``random`` / ``pixel`` / ``neighbor``: the gapped variants as filled
  by that policy (the ``__none`` byte-copies under ``filled/`` are
  excluded so each view contains gap imagery only).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch
from PIL import Image

from .errors import MaskMismatch

GAP_POSITIONS = ("ul", "ur", "ll", "lr")
POSITIONS = GAP_POSITIONS + ("none",)
# canonical table row order
POLICIES = ("original", "nofill", "random", "pixel", "neighbor")
FILL_POLICIES = ("random", "pixel", "neighbor")
RESERVED_DIRS = {"masks", "filled"}


def class_of(path: "str | Path") -> str:
    """Class label of an image: the name of its parent directory."""
    return Path(path).parent.name


def position_of(path: "str | Path") -> "str | None":
    """Gap position token from the ``__<pos>`` suffix, or None."""
    stem = Path(path).stem
    if "__" not in stem:
        return None
    token = stem.rsplit("__", 1)[1]
    return token if token in POSITIONS else None


def source_key(path: "str | Path") -> str:
    """Identity of the underlying source image, shared by all variants."""
    p = Path(path)
    stem = p.stem.rsplit("__", 1)[0] if position_of(p) else p.stem
    return f"{class_of(p)}/{stem}"


def read_listing(listing: "str | Path") -> list[Path]:
    """Paths from a one-per-line listing file.

    Blank lines are skipped; relative entries resolve against the
    listing's own directory, which makes the split files written next
    to a batch root self-describing.
    """
    listing = Path(listing)
    root = listing.parent
    paths = []
    for line in listing.read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        p = Path(line)
        paths.append(p if p.is_absolute() else root / p)
    return paths


def write_listing(listing: "str | Path", paths) -> Path:
    listing = Path(listing)
    listing.parent.mkdir(parents=True, exist_ok=True)
    listing.write_text("".join(str(p) + "\n" for p in paths))
    return listing


def class_dirs(batch_root: "str | Path") -> list[Path]:
    root = Path(batch_root)
    return sorted(
        d for d in root.iterdir() if d.is_dir() and d.name not in RESERVED_DIRS
    )


def policy_dataset(batch_root: "str | Path", policy: str) -> list[Path]:
    """All images of one dataset view, sorted for stable ordering."""
    root = Path(batch_root)
    if policy == "original":
        return sorted(p for d in class_dirs(root) for p in d.glob("*__none.png"))
    if policy == "nofill":
        return sorted(
            p for d in class_dirs(root) for p in d.glob("*.png")
            if position_of(p) in GAP_POSITIONS
        )
    if policy in FILL_POLICIES:
        filled = root / "filled" / policy
        if not filled.is_dir():
            return []
        return sorted(
            p for d in sorted(filled.iterdir()) if d.is_dir()
            for p in d.glob("*.png") if position_of(p) in GAP_POSITIONS
        )
    raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")


def split_dataset(batch_root: "str | Path", policy: str, split_listing: "str | Path") -> list[Path]:
    """One dataset view restricted to the variants named by a split file.

    The split listings hold variant paths relative to the batch root
    (``<class>/<stem>__<pos>.png``); this maps each line into the
    requested view: gapped lines to the policy's filled copy (or to the
    unfilled variant for ``nofill``), ``__none`` lines to the original
    view only.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")
    root = Path(batch_root)
    out = []
    for line in Path(split_listing).read_text().splitlines():
        rel = line.strip()
        if not rel:
            continue
        pos = position_of(rel)
        if policy == "original":
            if pos == "none":
                out.append(root / rel)
        elif pos in GAP_POSITIONS:
            if policy == "nofill":
                out.append(root / rel)
            else:
                out.append(root / "filled" / policy / rel)
    return sorted(out)


def mask_path_for(batch_root: "str | Path", variant: "str | Path") -> Path:
    """Mask PNG for a variant given as a path inside any dataset view."""
    variant = Path(variant)
    root = Path(batch_root)
    rel = variant.relative_to(root)
    if rel.parts[0] == "filled":
        rel = Path(*rel.parts[2:])
    return root / "masks" / rel


def load_image(path: "str | Path", size: "int | None" = None) -> np.ndarray:
    """One RGB image as float32 in [0, 1], optionally resized square."""
    with Image.open(path) as img:
        img = img.convert("RGB")
        if size is not None and img.size != (size, size):
            img = img.resize((size, size), Image.BILINEAR)
        return np.asarray(img, dtype=np.float32) / 255.0


def load_batch(paths, size: int) -> torch.Tensor:
    """Images stacked as an NCHW float tensor."""
    arrs = [load_image(p, size) for p in paths]
    return torch.from_numpy(np.stack(arrs)).permute(0, 3, 1, 2).contiguous()


def load_gap_mask(path: "str | Path", expect_size: "tuple[int, int] | None" = None) -> np.ndarray:
    """Boolean gap map from a mask PNG (mask stores 255 = valid).

    ``expect_size`` is (width, height) of the image the mask annotates;
    a disagreement raises MaskMismatch.
    """
    with Image.open(path) as img:
        if expect_size is not None and img.size != expect_size:
            raise MaskMismatch(
                f"mask {img.size} does not match image {expect_size}"
            )
        return np.asarray(img.convert("L")) < 128
