"""Attention maps: normalization, ratio semantics, overlays, mask checks."""

import json

import numpy as np
import pytest
from PIL import Image

from swatheval.attention import (
    AttentionReport,
    activation_map,
    attention_from_map,
    compute_activation_map,
)
from swatheval.data import mask_path_for, policy_dataset
from swatheval.errors import MaskMismatch


def _gap_mask(h, w):
    gap = np.zeros((h, w), dtype=bool)
    gap[: h // 2, : w // 2] = True
    return gap


def test_constant_map_scores_exactly_one():
    gap = _gap_mask(16, 16)
    report = attention_from_map(np.full((16, 16), 0.5), gap)
    assert report.gap_attention_ratio == 1.0
    assert report.mean_activation_in_gap == 0.5
    assert report.mean_activation_outside_gap == 0.5


def test_report_means_are_finite_nonnegative():
    rng = np.random.default_rng(0)
    report = attention_from_map(rng.random((16, 16)), _gap_mask(16, 16))
    assert np.isfinite(report.mean_activation_in_gap)
    assert np.isfinite(report.mean_activation_outside_gap)
    assert report.mean_activation_in_gap >= 0
    assert report.mean_activation_outside_gap >= 0
    assert report.gap_attention_ratio > 0


def test_ratio_undefined_when_outside_is_dark():
    gap = _gap_mask(8, 8)
    act = gap.astype(np.float64)  # all activation inside the gap
    report = attention_from_map(act, gap)
    assert report.mean_activation_outside_gap == 0.0
    assert report.gap_attention_ratio is None


def test_map_mask_shape_disagreement():
    with pytest.raises(ValueError):
        attention_from_map(np.zeros((8, 8)), _gap_mask(8, 10))


def test_mask_must_mark_both_regions():
    with pytest.raises(ValueError):
        attention_from_map(np.zeros((8, 8)), np.zeros((8, 8), dtype=bool))
    with pytest.raises(ValueError):
        attention_from_map(np.zeros((8, 8)), np.ones((8, 8), dtype=bool))


def test_report_round_trips_through_json():
    report = AttentionReport(1.5, 0.5, 3.0)
    assert json.loads(json.dumps(report.to_dict())) == {
        "mean_activation_in_gap": 1.5,
        "mean_activation_outside_gap": 0.5,
        "gap_attention_ratio": 3.0,
    }


def test_map_range_and_shape(tiny_model, batch_root):
    variant = policy_dataset(batch_root, "nofill")[0]
    act = compute_activation_map(tiny_model.model, variant)
    assert act.shape == (64, 64)
    assert act.min() >= 0.0 and act.max() <= 1.0


def test_overlay_written_at_input_size(tiny_model, batch_root, tmp_path):
    variant = policy_dataset(batch_root, "nofill")[0]
    mask = mask_path_for(batch_root, variant)
    report, overlay = activation_map(
        tiny_model.model, variant, mask, out_path=tmp_path / "o.png"
    )
    assert report.gap_attention_ratio is not None
    with Image.open(overlay) as img:
        assert img.size == (64, 64)


def test_overlay_follows_non_square_input(tiny_model, tmp_path):
    rng = np.random.default_rng(1)
    img_path = tmp_path / "wide.png"
    mask_path = tmp_path / "wide_mask.png"
    Image.fromarray(rng.integers(10, 240, size=(48, 80, 3), dtype=np.uint8)).save(img_path)
    mask = np.full((48, 80), 255, dtype=np.uint8)
    mask[:24, :40] = 0  # dark = gap
    Image.fromarray(mask).save(mask_path)
    report, overlay = activation_map(
        tiny_model.model, img_path, mask_path, out_path=tmp_path / "o.png"
    )
    assert report.mean_activation_in_gap >= 0
    with Image.open(overlay) as img:
        assert img.size == (80, 48)
    act = compute_activation_map(tiny_model.model, img_path)
    assert act.shape == (48, 80)


def test_mask_size_disagreement_raises(tiny_model, batch_root, tmp_path):
    variant = policy_dataset(batch_root, "nofill")[0]
    small = tmp_path / "small_mask.png"
    Image.fromarray(np.zeros((32, 32), dtype=np.uint8)).save(small)
    with pytest.raises(MaskMismatch):
        activation_map(tiny_model.model, variant, small)


def test_no_overlay_without_out_path(tiny_model, batch_root):
    variant = policy_dataset(batch_root, "nofill")[0]
    mask = mask_path_for(batch_root, variant)
    report, overlay = activation_map(tiny_model.model, variant, mask)
    assert overlay is None
    assert isinstance(report, AttentionReport)
