#!/usr/bin/env python3
"""Walkthrough: the full dataset pipeline in one call.

Builds a small synthetic corpus, runs the batch driver (simulate every
corner variant, fill with every policy, score every fill), then reads
the summary table back and averages it per policy. This is the same
path the ``swathfill batch`` console command takes.
"""

import csv
import tempfile
from collections import defaultdict
from pathlib import Path

from swathfill.cli import main as swathfill_main
from swathfill.synthetic import make_corpus


def main():
    with tempfile.TemporaryDirectory() as tmp:
        corpus = Path(tmp) / "corpus"
        out = Path(tmp) / "run"
        make_corpus(corpus, seed=0, classes=("beach", "forest", "harbor"),
                    images_per_class=2, size=128)

        rc = swathfill_main([
            "batch", "--input", str(corpus), "--out", str(out),
            "--seed", "17", "--images-per-class", "2",
            "--classes", "beach,forest,harbor", "--jobs", "2",
        ])
        assert rc == 0

        by_policy = defaultdict(lambda: {"bgr": 0.0, "hd": 0.0, "n": 0})
        with open(out / "summary.csv") as fh:
            for row in csv.DictReader(fh):
                agg = by_policy[row["policy"]]
                agg["bgr"] += float(row["boundary_gradient_ratio"])
                agg["hd"] += float(row["histogram_divergence"])
                agg["n"] += 1

        print(f"{'policy':<10} {'fills':>6} {'mean ratio':>12} {'mean divergence':>17}")
        for policy in ("random", "pixel", "neighbor"):
            agg = by_policy[policy]
            print(f"{policy:<10} {agg['n']:>6} {agg['bgr'] / agg['n']:>12.3f} "
                  f"{agg['hd'] / agg['n']:>17.5f}")

        train = (out / "split_train.txt").read_text().splitlines()
        val = (out / "split_val.txt").read_text().splitlines()
        print(f"\nsplit: {len(train)} train / {len(val)} val variants")
        print("rerunning with the same --seed reproduces every byte of this")


if __name__ == "__main__":
    main()
