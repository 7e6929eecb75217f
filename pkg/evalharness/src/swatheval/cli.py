"""Command-line interface for the retrieval evaluation harness.

Subcommands cover the full desk-scale experiment against a batch
directory produced by the fill pipeline:

* ``make-corpus``: write the seeded texture corpus the batch is built from;
* ``train``: train one autoencoder from a listing file;
* ``search``: top-k nearest neighbors for one query image;
* ``score``: train per-policy models over several seeds and emit the
  per-seed and seed-averaged success tables as CSV;
* ``attention``: activation-map overlay plus the gap-attention ratio
  for one image/mask pair.

Results print as JSON on stdout. Exit codes: 0 success, 2 usage,
3 unreadable or unwritable files, 4 inputs that violate the data
contract (empty listings, empty corpora, mismatched masks).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import data, texture
from .attention import activation_map
from .errors import EmptyCorpus, EmptyListing, MaskMismatch, ModelLoadError
from .scoring import aggregate, score_policies, write_scores_csv, write_summary_csv
from .search import similarity_search
from .train import train_autoencoder

DEFAULT_SEEDS = "101,102,103,104,105"


def _seed_list(text: str) -> list[int]:
    seeds = [int(t) for t in text.split(",") if t.strip()]
    if not seeds:
        raise ValueError("no seeds given")
    return seeds


def _class_list(text: str) -> tuple[str, ...]:
    if text == "all":
        return texture.CLASS_NAMES
    names = tuple(t.strip() for t in text.split(",") if t.strip())
    if not names:
        raise ValueError("no classes given")
    return names


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_make_corpus(args: argparse.Namespace) -> int:
    classes = _class_list(args.classes)
    paths = texture.make_texture_corpus(
        args.out,
        seed=args.seed,
        classes=classes,
        images_per_class=args.images_per_class,
        size=args.size,
    )
    _emit(
        {
            "out": str(Path(args.out)),
            "classes": list(classes),
            "images_per_class": args.images_per_class,
            "size": args.size,
            "seed": args.seed,
            "n_images": len(paths),
        }
    )
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    result = train_autoencoder(
        args.listing,
        args.epochs,
        args.seed,
        image_size=args.image_size,
        bottleneck=args.bottleneck,
        out_path=args.out,
        policy=args.policy,
    )
    _emit(
        {
            "artifact": str(result.artifact_path),
            "policy": result.config.policy,
            "seed": result.config.seed,
            "epochs": result.config.epochs,
            "n_images": len(data.read_listing(args.listing)),
            "initial_loss": result.initial_loss,
            "final_loss": result.final_loss,
        }
    )
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    result = similarity_search(args.model, args.query, args.corpus, k=args.k)
    _emit(result.to_dict())
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    batch = Path(args.batch).resolve()
    split = Path(args.split) if args.split else batch / "split_train.txt"
    seeds = _seed_list(args.seeds)
    policies = tuple(t.strip() for t in args.policies.split(",") if t.strip())
    out = Path(args.out)

    queries = data.policy_dataset(batch, "original")
    if not queries:
        raise EmptyCorpus(f"{batch} contains no gap-free query images")

    model_map: dict[str, list[Path]] = {}
    for policy in policies:
        paths = data.split_dataset(batch, policy, split)
        if not paths:
            raise EmptyListing(f"{split} yields no {policy} images")
        listing = data.write_listing(out / "listings" / f"{policy}.txt", paths)
        artifacts = []
        for seed in seeds:
            result = train_autoencoder(
                listing,
                args.epochs,
                seed,
                bottleneck=args.bottleneck,
                out_path=out / "models" / f"{policy}_seed{seed}.pt",
                policy=policy,
            )
            artifacts.append(result.artifact_path)
        model_map[policy] = artifacts

    scores = score_policies(model_map, queries, k=args.k)
    scores_csv = write_scores_csv(scores, out / "scores.csv")
    summary_csv = write_summary_csv(scores, out / "summary.csv")
    _emit(
        {
            "scores_csv": str(scores_csv),
            "summary_csv": str(summary_csv),
            "policies": list(policies),
            "seeds": seeds,
            "epochs": args.epochs,
            "n_queries": len(queries),
            "summary": aggregate(scores),
        }
    )
    return 0


def cmd_attention(args: argparse.Namespace) -> int:
    report, overlay = activation_map(
        args.model, args.image, args.mask, out_path=args.out, layer=args.layer
    )
    payload = report.to_dict()
    payload["overlay"] = str(overlay) if overlay else None
    _emit(payload)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swatheval",
        description="Retrieval-based evaluation of swath gap fill policies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-corpus", help="write the seeded texture corpus")
    p.add_argument("--out", required=True, help="corpus root directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--images-per-class", type=int, default=5)
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--classes", default="all", help="comma list or 'all'")
    p.set_defaults(func=cmd_make_corpus)

    p = sub.add_parser("train", help="train one autoencoder from a listing")
    p.add_argument("--listing", required=True, help="text file of image paths")
    p.add_argument("--out", required=True, help="model artifact path")
    p.add_argument("--epochs", type=int, default=25)
    p.add_argument("--seed", type=int, default=101)
    p.add_argument("--bottleneck", type=int, default=48)
    p.add_argument("--image-size", type=int, default=64)
    p.add_argument("--policy", default=None, help="policy tag stored in the artifact")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("search", help="top-k nearest neighbors for a query")
    p.add_argument("--model", required=True, help="model artifact path")
    p.add_argument("--query", required=True, help="query image")
    p.add_argument("--corpus", required=True, help="listing file of candidates")
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("score", help="per-policy success tables over seeds")
    p.add_argument("--batch", required=True, help="fill pipeline batch directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--policies", default=",".join(data.POLICIES), help="comma list")
    p.add_argument("--seeds", default=DEFAULT_SEEDS, help="comma list of training seeds")
    p.add_argument("--epochs", type=int, default=25)
    p.add_argument("--bottleneck", type=int, default=48)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--split", default=None, help="training split listing (default: batch's split_train.txt)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("attention", help="gap-attention ratio and overlay PNG")
    p.add_argument("--model", required=True, help="model artifact path")
    p.add_argument("--image", required=True, help="image to explain")
    p.add_argument("--mask", required=True, help="validity mask for the image")
    p.add_argument("--out", default=None, help="overlay PNG path")
    p.add_argument("--layer", type=int, default=3)
    p.set_defaults(func=cmd_attention)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EmptyListing, EmptyCorpus, MaskMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ModelLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
