"""Per-policy retrieval scoring across training seeds.

Each model artifact carries its own training listing, policy tag, and
seed, so a scoring run needs only the artifacts plus a set of query
images: the retrieval corpus for every model is exactly the data it was
trained on. Scores go to CSV twice, once per (policy, seed) pair and
once summarized per policy with the seeds recorded alongside.
"""

from __future__ import annotations

import csv
import dataclasses
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .data import class_of, read_listing
from .errors import EmptyCorpus
from .model import GapAutoencoder, load_model
from .search import embed_paths


@dataclasses.dataclass(frozen=True)
class PolicyScore:
    """Mean top-k class successes for one trained model."""

    policy: str
    seed: int
    n_queries: int
    corpus_size: int
    mean_successes: float


def mean_successes(
    model: GapAutoencoder,
    corpus_paths: Sequence[Path],
    query_paths: Sequence[Path],
    k: int = 4,
) -> float:
    """Average top-k class-success count over the queries.

    Matches similarity_search exactly (float64 distances, stable order,
    query excluded by resolved path) but embeds each image only once.
    """
    if not corpus_paths:
        raise EmptyCorpus("retrieval corpus is empty")
    corpus = [Path(p) for p in corpus_paths]
    queries = [Path(p) for p in query_paths]
    emb_c = embed_paths(model, corpus)
    emb_q = embed_paths(model, queries)
    classes = np.array([class_of(p) for p in corpus])
    resolved = [p.resolve() for p in corpus]

    per_query = []
    for qi, query in enumerate(queries):
        dist = np.linalg.norm(emb_c - emb_q[qi], axis=1)
        q_resolved = query.resolve()
        excluded = [i for i, r in enumerate(resolved) if r == q_resolved]
        if len(excluded) == len(corpus):
            raise EmptyCorpus(f"no candidates besides the query {query}")
        dist[excluded] = np.inf
        top = np.argsort(dist, kind="stable")[:k]
        top = top[np.isfinite(dist[top])]
        per_query.append(int(np.sum(classes[top] == class_of(query))))
    return float(np.mean(per_query))


def score_policies(
    model_per_policy: Mapping[str, Sequence["str | Path"]],
    queries: Sequence["str | Path"],
    k: int = 4,
) -> list[PolicyScore]:
    """Score every artifact against the shared query set.

    ``model_per_policy`` maps a policy name to its artifact paths, one
    per training seed. Each model retrieves from its own recorded
    training listing; seeds come from the artifacts themselves.
    """
    query_paths = [Path(q) for q in queries]
    if not query_paths:
        raise ValueError("no query images given")
    scores: list[PolicyScore] = []
    for policy, artifacts in model_per_policy.items():
        for artifact in artifacts:
            net = load_model(artifact)
            corpus = read_listing(net.config.train_listing)
            score = mean_successes(net, corpus, query_paths, k=k)
            scores.append(
                PolicyScore(
                    policy=policy,
                    seed=net.config.seed,
                    n_queries=len(query_paths),
                    corpus_size=len(corpus),
                    mean_successes=score,
                )
            )
    return scores


def aggregate(scores: Sequence[PolicyScore]) -> dict[str, float]:
    """Mean of mean_successes per policy, in first-appearance order."""
    by_policy: dict[str, list[float]] = {}
    for s in scores:
        by_policy.setdefault(s.policy, []).append(s.mean_successes)
    return {p: float(np.mean(v)) for p, v in by_policy.items()}


def write_scores_csv(scores: Sequence[PolicyScore], path: "str | Path") -> Path:
    """One row per (policy, seed): the full table behind the summary."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["policy", "seed", "n_queries", "corpus_size", "mean_successes"])
        for s in scores:
            writer.writerow(
                [s.policy, s.seed, s.n_queries, s.corpus_size, f"{s.mean_successes:.6f}"]
            )
    return path


def write_summary_csv(scores: Sequence[PolicyScore], path: "str | Path") -> Path:
    """One row per policy: seed-averaged successes plus the seeds used."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    by_policy: dict[str, list[PolicyScore]] = {}
    for s in scores:
        by_policy.setdefault(s.policy, []).append(s)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["policy", "seeds", "n_models", "mean_successes"])
        for policy, rows in by_policy.items():
            seeds = ";".join(str(r.seed) for r in rows)
            mean = float(np.mean([r.mean_successes for r in rows]))
            writer.writerow([policy, seeds, len(rows), f"{mean:.6f}"])
    return path
