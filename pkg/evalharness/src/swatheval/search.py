"""Nearest-neighbor retrieval in the autoencoder's bottleneck space.

Distances are Euclidean over embeddings, computed in float64 with a
stable sort, so results are reproducible and invariant under any
monotone rescaling of the distances. Class success counts how many of
the retrieved images share the query's class directory.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any

import numpy as np
import torch

from .data import class_of, load_batch, read_listing
from .errors import EmptyCorpus
from .model import GapAutoencoder, as_model


@dataclasses.dataclass(frozen=True)
class SimilarityResult:
    """Top-k retrieval outcome for one query image.

    ``top4`` holds the k best candidates as (path, class, distance)
    ascending by distance; named for the default k=4, it simply holds
    fewer or more entries for other k. ``successes`` is the number of
    entries whose class matches the query's.
    """

    query_path: str
    query_class: str
    top4: tuple[tuple[str, str, float], ...]
    successes: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "query_path": self.query_path,
            "query_class": self.query_class,
            "top4": [
                {"path": p, "class": c, "distance": d} for p, c, d in self.top4
            ],
            "successes": self.successes,
        }


def embed_paths(
    model: GapAutoencoder, paths: "list[Path]", batch_size: int = 64
) -> np.ndarray:
    """Bottleneck embeddings for the images, as an (n, dim) float64 array."""
    size = model.config.image_size
    chunks = []
    model.eval()
    with torch.no_grad():
        for i in range(0, len(paths), batch_size):
            x = load_batch(paths[i : i + batch_size], size=size)
            chunks.append(model.embed(x).numpy().astype(np.float64))
    if not chunks:
        return np.zeros((0, model.config.bottleneck), dtype=np.float64)
    return np.concatenate(chunks)


def similarity_search(
    model: "GapAutoencoder | str | Path",
    query_path: "str | Path",
    corpus_listing: "str | Path",
    k: int = 4,
) -> SimilarityResult:
    """Find the k nearest corpus images to the query, excluding the query.

    ``model`` may be a loaded autoencoder or an artifact path; the corpus
    is a listing file of image paths. The query never competes with
    itself: any corpus entry that resolves to the query's own file is
    dropped first, and EmptyCorpus is raised if nothing remains. With
    fewer than k candidates, all of them are returned.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    net = as_model(model)
    query = Path(query_path)
    corpus = read_listing(corpus_listing)
    query_resolved = query.resolve()
    candidates = [p for p in corpus if p.resolve() != query_resolved]
    if not candidates:
        raise EmptyCorpus(
            f"{corpus_listing} has no candidates besides the query itself"
        )

    emb_c = embed_paths(net, candidates)
    emb_q = embed_paths(net, [query])[0]
    dist = np.linalg.norm(emb_c - emb_q, axis=1)
    top = np.argsort(dist, kind="stable")[:k]

    query_class = class_of(query)
    hits = tuple(
        (str(candidates[i]), class_of(candidates[i]), float(dist[i])) for i in top
    )
    successes = sum(1 for _, c, _ in hits if c == query_class)
    return SimilarityResult(
        query_path=str(query),
        query_class=query_class,
        top4=hits,
        successes=successes,
    )
