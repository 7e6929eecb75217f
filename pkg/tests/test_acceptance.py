"""End-to-end acceptance checks over the full 35-image protocol run.

Each test exercises one acceptance criterion at its stated tolerance
and records a PASS/FAIL line that the conftest reporter prints after
the run. The corpus is seeded and fixed; every expected value below is
either exact arithmetic or a frozen statistical band.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from swathfill import (
    BLACK,
    FillPolicy,
    GapPosition,
    GapSpec,
    Raster,
    compare_policies,
    detect,
    evaluate,
    fill,
    fill_neighbor_rgb,
    inject_gap,
    load_mask,
    load_raster,
    save_raster,
)
from swathfill.cli import main
from swathfill.synthetic import make_corpus

CORPUS_SEED = 2021
ORDERING_SEEDS = (101, 102, 103, 104, 105)


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("acceptance") / "corpus"
    make_corpus(root, seed=CORPUS_SEED)
    return root


@pytest.fixture(scope="module")
def corpus_paths(corpus_dir) -> list[Path]:
    return sorted(corpus_dir.rglob("*.png"))


@pytest.fixture(scope="module")
def batch_dir(tmp_path_factory, corpus_dir) -> Path:
    out = tmp_path_factory.mktemp("acceptance_batch") / "out"
    rc = main(["batch", "--input", str(corpus_dir), "--out", str(out),
               "--seed", "5", "--jobs", "4"])
    assert rc == 0
    return out


def test_determinism(corpus_paths, tmp_path, record_acceptance):
    """Two fills with identical inputs produce byte-identical PNGs."""
    assert len(corpus_paths) == 35
    started = time.perf_counter()
    mismatches = 0
    for i, path in enumerate(corpus_paths):
        raster = load_raster(path)
        gapped, mask = inject_gap(raster, GapSpec(GapPosition.UPPER_LEFT, 0.20))
        for policy in FillPolicy:
            pair = []
            for run in range(2):
                filled, _ = fill(gapped, mask, policy, seed=1000 + i)
                out = tmp_path / f"{i}_{policy.token}_{run}.png"
                save_raster(filled, out)
                pair.append(out.read_bytes())
            if pair[0] != pair[1]:
                mismatches += 1
    elapsed = time.perf_counter() - started
    ok = mismatches == 0 and elapsed < 30.0
    record_acceptance(
        "determinism", ok,
        f"35 images x 3 policies, {mismatches} byte mismatches, {elapsed:.1f}s",
    )
    assert mismatches == 0
    assert elapsed < 30.0


def test_mask_preservation(batch_dir, read_jsonl, record_acceptance):
    """No fill in the 420-fill batch modifies a valid pixel."""
    fills = read_jsonl(batch_dir / "fills.jsonl")
    gapped = [f for f in fills if f["position"] != "none"]
    assert len(gapped) == 420
    bad_pixels = 0
    for entry in gapped:
        variant = load_raster(batch_dir / entry["variant"])
        filled = load_raster(batch_dir / entry["output"])
        mask = load_mask(batch_dir / "masks" / entry["variant"])
        diff = np.any(filled.pixels != variant.pixels, axis=2) & mask.valid
        bad_pixels += int(diff.sum())
    record_acceptance(
        "mask-preservation", bad_pixels == 0,
        f"420 fills audited, {bad_pixels} valid pixels modified",
    )
    assert bad_pixels == 0


def test_gap_area_protocol(batch_dir, read_jsonl, record_acceptance):
    """Every square variant at fraction 0.20 lands within 0.005 of it."""
    entries = [e for e in read_jsonl(batch_dir / "manifest.jsonl") if e["position"] != "none"]
    assert len(entries) == 140
    worst = 0.0
    for entry in entries:
        mask = load_mask(batch_dir / "masks" / entry["output"])
        worst = max(worst, abs(mask.gap_fraction - 0.20))
    record_acceptance(
        "gap-area-protocol", worst <= 0.005,
        f"140 variants, max |fraction - 0.20| = {worst:.6f}",
    )
    assert worst <= 0.005
    # the 256x256 protocol geometry is exact
    sample = load_mask(batch_dir / "masks" / entries[0]["output"])
    assert sample.gap_fraction == 12996 / 65536


def test_source_provenance(batch_dir, read_jsonl, record_acceptance):
    """Filled pixels trace back to originally-valid pixels.

    Pixel policy: every filled triple is in the valid multiset.
    Neighbor policy: every filled pixel matches a valid pixel inside
    its recorded final Chebyshev radius. Audited brute-force on 12
    images spread across classes.
    """
    fills = read_jsonl(batch_dir / "fills.jsonl")
    pixel_entries = [f for f in fills if f["policy"] == "pixel" and f["position"] != "none"]
    audited = pixel_entries[::12][:12]
    assert len(audited) == 12

    pixel_violations = 0
    neighbor_violations = 0
    for entry in audited:
        variant = load_raster(batch_dir / entry["variant"])
        mask = load_mask(batch_dir / "masks" / entry["variant"])
        gap = ~mask.valid
        h, w = gap.shape

        filled = load_raster(batch_dir / entry["output"])
        valid_set = {tuple(t) for t in variant.pixels[mask.valid].reshape(-1, 3)}
        for triple in filled.pixels[gap].reshape(-1, 3):
            if tuple(triple) not in valid_set:
                pixel_violations += 1

        # repeat the batch's neighbor fill to recover the radius map,
        # confirming on the way that it reproduces the shipped PNG
        neighbor_path = Path(str(entry["output"]).replace("/pixel/", "/neighbor/"))
        shipped = load_raster(batch_dir / neighbor_path)
        refilled, report = fill_neighbor_rgb(variant, mask, seed=entry["seed"])
        assert refilled == shipped
        radii = report.neighbor_final_radii.astype(int)
        for r, c in zip(*np.nonzero(gap)):
            rad = radii[r, c]
            win = variant.pixels[max(0, r - rad):r + rad + 1, max(0, c - rad):c + rad + 1]
            win_valid = mask.valid[max(0, r - rad):r + rad + 1, max(0, c - rad):c + rad + 1]
            if not np.any(np.all(win[win_valid] == refilled.pixels[r, c], axis=1)):
                neighbor_violations += 1

    ok = pixel_violations == 0 and neighbor_violations == 0
    record_acceptance(
        "source-provenance", ok,
        f"12 images, {pixel_violations} pixel-policy and "
        f"{neighbor_violations} neighbor-policy violations",
    )
    assert pixel_violations == 0
    assert neighbor_violations == 0


def test_trivial_oracles(record_acceptance):
    """Uniform sources fill uniformly; identical fill scores (0, 0)."""
    color = (90, 140, 190)
    raster = Raster(np.full((128, 128, 3), color, np.uint8))
    gapped, mask = inject_gap(raster, GapSpec(GapPosition.UPPER_LEFT, 0.20))

    uniform_ok = True
    for policy in (FillPolicy.PIXEL_RGB, FillPolicy.NEIGHBOR_RGB):
        filled, _ = fill(gapped, mask, policy, seed=0)
        uniform_ok &= bool(np.all(filled.pixels == color))

    report = evaluate(raster, raster, mask)
    zeros_ok = (
        abs(report.boundary_gradient_ratio) <= 1e-9
        and abs(report.histogram_divergence) <= 1e-9
    )
    record_acceptance(
        "trivial-oracles", uniform_ok and zeros_ok,
        f"uniform fills exact: {uniform_ok}; zero metrics at 1e-9: {zeros_ok}",
    )
    assert uniform_ok
    assert zeros_ok


def test_policy_ordering(corpus_paths, record_acceptance):
    """Corpus-mean metrics ordered Neighbor < Pixel < Random.

    Both metrics are required to order the same way. The boundary
    gradient ratio does; the histogram divergence cannot on this kind
    of imagery: pixel fill draws i.i.d. from the valid-region histogram
    itself, pinning its divergence at the multinomial sampling floor of
    roughly (occupied_bins - 1) / (8 * n_gap), while neighbor fill's
    spatial locality biases its histogram away from the region-wide
    one. The assertion is kept at the stated strength and the recorded
    line documents the measured values.
    """
    started = time.perf_counter()
    sums = {p: {"bgr": 0.0, "hd": 0.0} for p in FillPolicy}
    for path in corpus_paths:
        raster = load_raster(path)
        gapped, mask = inject_gap(raster, GapSpec(GapPosition.UPPER_LEFT, 0.20))
        results = compare_policies(gapped, mask, seeds=ORDERING_SEEDS)
        for policy, report in results.items():
            sums[policy]["bgr"] += report.boundary_gradient_ratio
            sums[policy]["hd"] += report.histogram_divergence
    n = len(corpus_paths)
    means = {p: {k: v / n for k, v in kv.items()} for p, kv in sums.items()}
    elapsed = time.perf_counter() - started

    neighbor, pixel, random_ = (
        means[FillPolicy.NEIGHBOR_RGB],
        means[FillPolicy.PIXEL_RGB],
        means[FillPolicy.RANDOM_RGB],
    )
    bgr_ordered = neighbor["bgr"] < pixel["bgr"] < random_["bgr"]
    hd_ordered = neighbor["hd"] < pixel["hd"] < random_["hd"]
    detail = (
        f"boundary ratio N={neighbor['bgr']:.3f} P={pixel['bgr']:.3f} "
        f"R={random_['bgr']:.3f} ordered={bgr_ordered}; "
        f"divergence N={neighbor['hd']:.2e} P={pixel['hd']:.2e} "
        f"R={random_['hd']:.3f} ordered={hd_ordered}; {elapsed:.1f}s"
    )
    record_acceptance("policy-ordering", bgr_ordered and hd_ordered and elapsed < 120, detail)
    assert elapsed < 120
    assert bgr_ordered, f"boundary gradient ratio ordering violated: {detail}"
    assert hd_ordered, f"histogram divergence ordering violated: {detail}"


def test_usability_rule(record_acceptance):
    """Exactly 20% usable; 25% and 30% flagged unusable."""
    outcomes = {}
    for n_gap, expected in ((80, True), (100, False), (120, False)):
        px = np.full((20, 20, 3), 60, np.uint8)
        coords = [(i // 20, i % 20) for i in range(n_gap)]
        for r, c in coords:
            px[r, c] = 0
        _, stats = detect(Raster(px))
        assert stats.gap_fraction == n_gap / 400
        outcomes[n_gap / 400] = stats.usable is expected
    ok = all(outcomes.values())
    record_acceptance(
        "usability-rule", ok,
        "0.20 usable, 0.25 unusable, 0.30 unusable" if ok else f"violations: {outcomes}",
    )
    assert ok
