"""Batch-layout access: path grammar, listings, views, masks."""

from pathlib import Path

import numpy as np
import pytest

from swatheval.data import (
    GAP_POSITIONS,
    POLICIES,
    class_of,
    class_dirs,
    load_batch,
    load_gap_mask,
    load_image,
    mask_path_for,
    policy_dataset,
    position_of,
    read_listing,
    source_key,
    split_dataset,
    write_listing,
)
from swatheval.errors import MaskMismatch


def test_class_of_is_parent_dir():
    assert class_of("batch/grid/grid_00__ul.png") == "grid"
    assert class_of(Path("/abs/waves/w__none.png")) == "waves"


def test_position_of_grammar():
    assert position_of("grid/a__ul.png") == "ul"
    assert position_of("grid/a__none.png") == "none"
    assert position_of("grid/a.png") is None
    assert position_of("grid/a__xx.png") is None
    assert position_of("grid/a__b__lr.png") == "lr"


def test_source_key_strips_position():
    assert source_key("grid/g_01__ul.png") == "grid/g_01"
    assert source_key("grid/g_01__none.png") == "grid/g_01"
    assert source_key("grid/g_01.png") == "grid/g_01"


def test_read_listing_resolves_against_listing_dir(tmp_path):
    sub = tmp_path / "sub"
    sub.mkdir()
    (sub / "a.png").write_bytes(b"x")
    listing = sub / "files.txt"
    listing.write_text("a.png\n\n  \n/abs/b.png\n")
    paths = read_listing(listing)
    assert paths == [sub / "a.png", Path("/abs/b.png")]


def test_write_listing_round_trip(tmp_path):
    paths = [tmp_path / "x.png", tmp_path / "y.png"]
    listing = write_listing(tmp_path / "deep" / "l.txt", paths)
    assert read_listing(listing) == paths


def test_class_dirs_skip_reserved(batch_root):
    names = [d.name for d in class_dirs(batch_root)]
    assert len(names) == 7
    assert "masks" not in names and "filled" not in names
    assert names == sorted(names)


def test_policy_dataset_views(batch_root):
    original = policy_dataset(batch_root, "original")
    nofill = policy_dataset(batch_root, "nofill")
    assert len(original) == 35
    assert len(nofill) == 140
    assert all(position_of(p) == "none" for p in original)
    assert all(position_of(p) in GAP_POSITIONS for p in nofill)
    for policy in ("random", "pixel", "neighbor"):
        filled = policy_dataset(batch_root, policy)
        assert len(filled) == 140
        assert all(p.parts[-4:-2] == ("filled", policy) for p in filled)
        # the __none byte-copies under filled/ stay out of the view
        assert all(position_of(p) != "none" for p in filled)


def test_policy_dataset_unknown_policy(batch_root):
    with pytest.raises(ValueError):
        policy_dataset(batch_root, "mean")


def test_split_dataset_partitions_each_view(batch_root):
    train = batch_root / "split_train.txt"
    val = batch_root / "split_val.txt"
    for policy in POLICIES:
        a = split_dataset(batch_root, policy, train)
        b = split_dataset(batch_root, policy, val)
        assert set(a).isdisjoint(b)
        assert sorted(a + b) == policy_dataset(batch_root, policy)
    with pytest.raises(ValueError):
        split_dataset(batch_root, "mean", train)


def test_split_dataset_maps_lines_into_views(batch_root):
    train = batch_root / "split_train.txt"
    lines = [l for l in train.read_text().splitlines() if l.strip()]
    gapped = [l for l in lines if position_of(l) in GAP_POSITIONS]
    none = [l for l in lines if position_of(l) == "none"]
    assert len(split_dataset(batch_root, "nofill", train)) == len(gapped)
    assert len(split_dataset(batch_root, "original", train)) == len(none)
    assert len(split_dataset(batch_root, "pixel", train)) == len(gapped)


def test_mask_path_for_any_view(batch_root):
    variant = policy_dataset(batch_root, "nofill")[0]
    mask = mask_path_for(batch_root, variant)
    assert mask.exists()
    assert mask.parts[-3] == "masks"
    filled = policy_dataset(batch_root, "neighbor")[0]
    assert mask_path_for(batch_root, filled) == mask_path_for(
        batch_root, batch_root / filled.relative_to(batch_root / "filled" / "neighbor")
    )


def test_load_image_range_and_resize(batch_root):
    path = policy_dataset(batch_root, "original")[0]
    arr = load_image(path)
    assert arr.shape == (64, 64, 3)
    assert arr.dtype == np.float32
    assert 0.0 <= arr.min() and arr.max() <= 1.0
    small = load_image(path, size=32)
    assert small.shape == (32, 32, 3)


def test_load_batch_shape(batch_root):
    paths = policy_dataset(batch_root, "original")[:3]
    x = load_batch(paths, size=64)
    assert tuple(x.shape) == (3, 3, 64, 64)


def test_load_gap_mask_fraction(batch_root):
    variant = policy_dataset(batch_root, "nofill")[0]
    gap = load_gap_mask(mask_path_for(batch_root, variant), expect_size=(64, 64))
    assert gap.dtype == bool
    # square gap side 32 in a 64x64 frame
    assert gap.mean() == 0.25


def test_load_gap_mask_size_mismatch(batch_root):
    variant = policy_dataset(batch_root, "nofill")[0]
    with pytest.raises(MaskMismatch):
        load_gap_mask(mask_path_for(batch_root, variant), expect_size=(32, 64))


def test_package_never_imports_the_fill_pipeline():
    """The only interface to the fill pipeline is its files."""
    import swatheval

    src = Path(swatheval.__file__).parent
    for py in sorted(src.glob("*.py")):
        text = py.read_text()
        assert "import swathfill" not in text, py.name
        assert "from swathfill" not in text, py.name
