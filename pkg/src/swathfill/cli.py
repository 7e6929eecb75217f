"""Command-line pipeline driver.

Subcommands: ``simulate`` (gap variants + manifest), ``fill`` (one
image), ``detect`` (gap stats as JSON), ``evaluate`` (metrics as JSON),
``batch`` (simulate, fill with every policy, evaluate, CSV summary,
train/val split listings).

Exit codes: 0 success, 2 usage or configuration error, 3 I/O error,
4 degenerate data. The master seed comes from ``--seed``, falling back
to the ``SWATHFILL_SEED`` environment variable, then 0.

Batch output layout, relative to ``--out`` (a public interface;
consumers may rely on it):

* ``manifest.jsonl``: one line per variant
  (``source``, ``class``, ``position``, ``output``, ``seed``).
* ``<class>/<stem>__<pos>.png``: gap variants; pos in
  none/ul/ur/ll/lr.
* ``masks/<class>/<stem>__<pos>.png``: grayscale masks, 255 = valid.
* ``filled/<policy>/<class>/<stem>__<pos>.png``: filled imagery; the
  gap-free variant is byte-copied so each policy directory is a
  complete dataset.
* ``fills.jsonl``: one line per file under ``filled/``
  (``variant``, ``class``, ``position``, ``policy``, ``seed``,
  ``output``; seed is null for the gap-free copies).
* ``summary.csv``: class, image, position, policy, seed,
  boundary_gradient_ratio, histogram_divergence.
* ``split_train.txt`` / ``split_val.txt``: variant paths, seeded
  90/10 split.

``masks`` and ``filled`` are reserved names: class directories must not
use them.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import shutil
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .detect import detect
from .errors import (
    CorruptFile,
    DegenerateMask,
    GapTooLarge,
    NoValidSource,
    UnsupportedFormat,
)
from .fill import FillPolicy, fill
from .gapsim import (
    AREA_FRACTION_CAP,
    DEFAULT_AREA_FRACTION,
    GapPosition,
    VARIANT_ORDER,
    contains_sentinel,
    make_variants,
)
from .metrics import evaluate
from .raster import (
    BLACK,
    SentinelColor,
    load_mask,
    load_raster,
    mask_from_sentinel,
    save_mask,
    save_raster,
    save_radius_map,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4

DEFAULT_CLASSES = (
    "airplane",
    "beach",
    "forest",
    "harbor",
    "freeway",
    "river",
    "storagetanks",
)
RESERVED_DIRS = {"masks", "filled"}
_IMAGE_SUFFIXES = {".png", ".ppm"}
# entropy tag separating the split shuffle from per-image seed streams
_SPLIT_STREAM_TAG = 997


class UsageError(ValueError):
    """Configuration problem detected after argument parsing."""


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------


def _sentinel_type(text: str) -> SentinelColor:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"sentinel must be R,G,B; got {text!r}")
    try:
        r, g, b = (int(p) for p in parts)
        return SentinelColor(r, g, b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _fraction_type(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < value <= AREA_FRACTION_CAP:
        raise argparse.ArgumentTypeError(
            f"area fraction {value} outside (0, {AREA_FRACTION_CAP}]"
        )
    return value


def _split_type(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"split {value} outside (0, 1)")
    return value


def _positions_type(text: str) -> tuple[GapPosition, ...]:
    try:
        positions = tuple(GapPosition.from_token(t.strip()) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return positions


def _policies_type(text: str) -> tuple[FillPolicy, ...]:
    try:
        tokens = [t.strip() for t in text.split(",")]
        chosen = tuple(FillPolicy.from_token(t) for t in tokens)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    # keep canonical order regardless of how flags listed them
    return tuple(p for p in FillPolicy if p in chosen)


def _seed_value(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SWATHFILL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SWATHFILL_SEED={env!r} is not an integer")
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _class_dirs(input_dir: Path, classes: "tuple[str, ...] | None") -> list[Path]:
    if not input_dir.is_dir():
        raise UsageError(f"input directory {input_dir} does not exist")
    present = sorted(d.name for d in input_dir.iterdir() if d.is_dir())
    if classes is None:
        chosen = [name for name in present if name in DEFAULT_CLASSES]
        if not chosen:
            raise UsageError(
                f"{input_dir} has no class subdirectory among the defaults "
                f"{', '.join(DEFAULT_CLASSES)}; pass --classes"
            )
    elif classes == ("all",):
        chosen = present
        if not chosen:
            raise UsageError(f"{input_dir} contains no class subdirectories")
    else:
        missing = [name for name in classes if name not in present]
        if missing:
            raise UsageError(f"class directories not found: {', '.join(missing)}")
        chosen = sorted(classes)
    bad = sorted(set(chosen) & RESERVED_DIRS)
    if bad:
        raise UsageError(f"class names collide with reserved output dirs: {', '.join(bad)}")
    return [input_dir / name for name in chosen]


def _select_images(files: list[Path], count: int, seed: int, class_index: int) -> list[Path]:
    """Seeded selection of ``count`` files, returned in sorted order."""
    if len(files) < count:
        raise UsageError(
            f"{files[0].parent if files else 'class dir'} has {len(files)} images, "
            f"need {count}"
        )
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=[seed & (2**63 - 1), class_index]))
    )
    picked = rng.choice(len(files), size=count, replace=False)
    return [files[i] for i in sorted(int(i) for i in picked)]


def _run_simulate(
    input_dir: Path,
    out_dir: Path,
    seed: int,
    images_per_class: int,
    area_fraction: float,
    sentinel: SentinelColor,
    classes: "tuple[str, ...] | None",
    positions: "tuple[GapPosition, ...] | None",
    manifest_name: str = "manifest.jsonl",
) -> list[dict]:
    """Write variants, masks, and the manifest; returns manifest entries.

    Cleans up everything it wrote when any step fails.
    """
    wanted = set(positions) if positions is not None else set(VARIANT_ORDER)
    class_dirs = _class_dirs(input_dir, classes)
    written: list[Path] = []
    entries: list[dict] = []
    try:
        for ci, class_dir in enumerate(class_dirs):
            files = sorted(
                p for p in class_dir.iterdir()
                if p.is_file() and p.suffix.lower() in _IMAGE_SUFFIXES
            )
            selected = _select_images(files, images_per_class, seed, ci)
            for fi, src in enumerate(selected):
                raster = load_raster(src)
                warn = contains_sentinel(raster, sentinel)
                base = int(
                    np.random.SeedSequence(entropy=[seed & (2**63 - 1), ci, fi])
                    .generate_state(1, dtype=np.uint64)[0]
                )
                for variant in make_variants(raster, sentinel, area_fraction, base):
                    if variant.position not in wanted:
                        continue
                    name = f"{src.stem}__{variant.position.token}.png"
                    out_path = out_dir / class_dir.name / name
                    mask_path = out_dir / "masks" / class_dir.name / name
                    save_raster(variant.raster, out_path)
                    written.append(out_path)
                    save_mask(variant.mask, mask_path)
                    written.append(mask_path)
                    entry = {
                        "source": str(src),
                        "class": class_dir.name,
                        "position": variant.position.token,
                        "output": str(out_path.relative_to(out_dir)),
                        "seed": variant.seed,
                    }
                    if warn:
                        entry["warning"] = "source-contains-sentinel"
                    entries.append(entry)
        manifest = out_dir / manifest_name
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(manifest, "w") as fh:
            for entry in entries:
                fh.write(json.dumps(entry) + "\n")
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        (out_dir / manifest_name).unlink(missing_ok=True)
        raise
    return entries


def cmd_simulate(args: argparse.Namespace) -> int:
    entries = _run_simulate(
        input_dir=Path(args.input),
        out_dir=Path(args.out),
        seed=_seed_value(args),
        images_per_class=args.images_per_class,
        area_fraction=args.area_fraction,
        sentinel=args.sentinel,
        classes=args.classes,
        positions=args.position,
    )
    warned = sum(1 for e in entries if "warning" in e)
    if warned:
        print(f"warning: {warned} variants built from sentinel-bearing sources", file=sys.stderr)
    print(f"wrote {len(entries)} variants under {args.out}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fill / detect / evaluate
# ---------------------------------------------------------------------------


def _mask_for(args: argparse.Namespace, raster_path: Path):
    raster = load_raster(raster_path)
    if args.mask is not None:
        mask = load_mask(Path(args.mask))
    else:
        mask = mask_from_sentinel(raster, args.sentinel)
    return raster, mask


def cmd_fill(args: argparse.Namespace) -> int:
    out_path = Path(args.out)
    if out_path.suffix.lower() not in _IMAGE_SUFFIXES:
        raise UsageError(f"--out must end in .png or .ppm, got {out_path.suffix!r}")
    if args.radii is not None and args.policy is not FillPolicy.NEIGHBOR_RGB:
        raise UsageError("--radii applies to the neighbor policy only")
    raster, mask = _mask_for(args, Path(args.input))
    if not mask.valid.any():
        raise NoValidSource("image is entirely gap")
    filled, report = fill(raster, mask, args.policy, _seed_value(args))
    save_raster(filled, out_path)
    if args.radii is not None:
        save_radius_map(report.neighbor_final_radii, Path(args.radii))
    print(report.to_json())
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    raster = load_raster(Path(args.input))
    _, stats = detect(raster, args.sentinel, use_alpha=args.use_alpha)
    print(stats.to_json())
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    original, mask = _mask_for(args, Path(args.original))
    filled = load_raster(Path(args.filled))
    report = evaluate(original, filled, mask)
    print(report.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------


def _fill_work_item(item: tuple) -> tuple:
    """One fill + evaluate, runs in a worker process. Returns the CSV row."""
    variant_path, mask_path, out_path, policy_token, seed = item
    raster = load_raster(variant_path)
    mask = load_mask(mask_path)
    policy = FillPolicy.from_token(policy_token)
    filled, _ = fill(raster, mask, policy, seed)
    save_raster(filled, Path(out_path))
    report = evaluate(raster, filled, mask)
    return (
        variant_path,
        policy_token,
        seed,
        report.boundary_gradient_ratio,
        report.histogram_divergence,
    )


def _write_summary(path: Path, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["class", "image", "position", "policy", "seed",
             "boundary_gradient_ratio", "histogram_divergence"]
        )
        for row in rows:
            writer.writerow(
                [row["class"], row["image"], row["position"], row["policy"],
                 row["seed"], repr(row["bgr"]), repr(row["hd"])]
            )


def cmd_batch(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    seed = _seed_value(args)
    entries = _run_simulate(
        input_dir=Path(args.input),
        out_dir=out_dir,
        seed=seed,
        images_per_class=args.images_per_class,
        area_fraction=args.area_fraction,
        sentinel=args.sentinel,
        classes=args.classes,
        positions=args.position,
    )
    policies = args.policies

    # fill work: every gapped variant x policy, ordered by output path
    items = []
    fill_lines = []
    for entry in sorted(entries, key=lambda e: e["output"]):
        variant_path = out_dir / entry["output"]
        mask_path = out_dir / "masks" / entry["output"]
        for policy in policies:
            filled_path = out_dir / "filled" / policy.token / entry["output"]
            line = {
                "variant": entry["output"],
                "class": entry["class"],
                "position": entry["position"],
                "policy": policy.token,
                "seed": entry["seed"] if entry["position"] != "none" else None,
                "output": str(filled_path.relative_to(out_dir)),
            }
            fill_lines.append(line)
            if entry["position"] == "none":
                # gap-free: byte-copy so the policy dataset is complete
                filled_path.parent.mkdir(parents=True, exist_ok=True)
                shutil.copyfile(variant_path, filled_path)
            else:
                items.append(
                    (str(variant_path), str(mask_path), str(filled_path),
                     policy.token, entry["seed"])
                )

    by_variant = {(e["output"]): e for e in entries}
    rows: list[dict] = []
    failure: BaseException | None = None
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = pool.map(_fill_work_item, items)
                for result in results:
                    rows.append(_row_from_result(result, by_variant, out_dir))
        else:
            for item in items:
                rows.append(_row_from_result(_fill_work_item(item), by_variant, out_dir))
    except BaseException as exc:
        failure = exc

    rows.sort(key=lambda r: (r["variant"], r["policy_order"]))
    if failure is not None:
        _write_summary(out_dir / "summary.csv.partial", rows)
        raise failure

    with open(out_dir / "fills.jsonl", "w") as fh:
        for line in fill_lines:
            fh.write(json.dumps(line) + "\n")
    _write_summary(out_dir / "summary.csv", rows)

    # seeded 90/10 split over variant paths
    variant_paths = sorted(e["output"] for e in entries)
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=[seed & (2**63 - 1), _SPLIT_STREAM_TAG]))
    )
    order = rng.permutation(len(variant_paths))
    n_train = int(round(args.split * len(variant_paths)))
    train = sorted(variant_paths[i] for i in order[:n_train])
    val = sorted(variant_paths[i] for i in order[n_train:])
    (out_dir / "split_train.txt").write_text("".join(p + "\n" for p in train))
    (out_dir / "split_val.txt").write_text("".join(p + "\n" for p in val))

    print(
        f"batch complete: {len(entries)} variants, {len(items)} fills, "
        f"{len(train)}/{len(val)} split",
        file=sys.stderr,
    )
    return EXIT_OK


def _row_from_result(result: tuple, by_variant: dict, out_dir: Path) -> dict:
    variant_path, policy_token, seed, bgr, hd = result
    rel = str(Path(variant_path).relative_to(out_dir))
    entry = by_variant[rel]
    stem = Path(rel).stem.rsplit("__", 1)[0]
    return {
        "variant": rel,
        "class": entry["class"],
        "image": stem,
        "position": entry["position"],
        "policy": policy_token,
        "policy_order": [p.token for p in FillPolicy].index(policy_token),
        "seed": seed,
        "bgr": bgr,
        "hd": hd,
    }


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common_sim_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="corpus root, one subdirectory per class")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (default: $SWATHFILL_SEED, then 0)")
    p.add_argument("--images-per-class", type=int, default=5)
    p.add_argument("--area-fraction", type=_fraction_type, default=DEFAULT_AREA_FRACTION)
    p.add_argument("--sentinel", type=_sentinel_type, default=BLACK, help="gap color R,G,B")
    p.add_argument("--classes", type=lambda t: tuple(s.strip() for s in t.split(",")),
                   default=None,
                   help="comma list of class dirs, or 'all' (default: the standard seven)")
    p.add_argument("--position", type=_positions_type, default=None,
                   help="comma list of ul,ur,ll,lr,none (default: all five)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swathfill",
        description="Simulate, detect, fill, and score swath gaps in RGB imagery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write positional gap variants plus manifest")
    _add_common_sim_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fill", help="fill one gapped image")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--policy", type=FillPolicy.from_token, required=True,
                   help="random | pixel | neighbor")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mask", default=None, help="mask PNG (255=valid); overrides --sentinel")
    p.add_argument("--sentinel", type=_sentinel_type, default=BLACK)
    p.add_argument("--radii", default=None,
                   help="write the neighbor policy's final radii as 16-bit PNG")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("detect", help="print gap statistics as JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--sentinel", type=_sentinel_type, default=BLACK)
    p.add_argument("--use-alpha", action="store_true",
                   help="also treat alpha == 0 as gap")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("evaluate", help="print detectability metrics as JSON")
    p.add_argument("--original", required=True, help="gapped image the mask refers to")
    p.add_argument("--filled", required=True)
    p.add_argument("--mask", default=None, help="mask PNG; overrides --sentinel")
    p.add_argument("--sentinel", type=_sentinel_type, default=BLACK)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("batch", help="simulate, fill, evaluate, summarize")
    _add_common_sim_args(p)
    p.add_argument("--policies", type=_policies_type,
                   default=tuple(FillPolicy),
                   help="comma subset of random,pixel,neighbor (default: all)")
    p.add_argument("--jobs", type=int, default=1, help="parallel fill workers")
    p.add_argument("--split", type=_split_type, default=0.90,
                   help="train fraction for the split listings")
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoValidSource, DegenerateMask, GapTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (CorruptFile, UnsupportedFormat, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
