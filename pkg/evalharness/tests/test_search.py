"""Top-k retrieval: exclusion, ordering, rank invariance, golden run."""

import json

import numpy as np
import pytest

from swatheval.data import class_of, policy_dataset, read_listing, write_listing
from swatheval.errors import EmptyCorpus
from swatheval.search import embed_paths, similarity_search


@pytest.fixture(scope="module")
def original_listing(batch_root, tmp_path_factory):
    paths = policy_dataset(batch_root, "original")
    return write_listing(tmp_path_factory.mktemp("search") / "orig.txt", paths)


def test_query_never_retrieves_itself(tiny_model, original_listing):
    query = read_listing(original_listing)[0]
    result = similarity_search(tiny_model.model, query, original_listing)
    assert str(query) not in [p for p, _, _ in result.top4]
    assert len(result.top4) == 4


def test_corpus_of_one_same_class(tiny_model, batch_root, tmp_path):
    originals = policy_dataset(batch_root, "original")
    query, other = originals[0], originals[1]
    assert class_of(query) == class_of(other)
    listing = write_listing(tmp_path / "one.txt", [other])
    result = similarity_search(tiny_model.model, query, listing)
    assert [p for p, _, _ in result.top4] == [str(other)]
    assert result.successes == 1


def test_corpus_of_one_other_class(tiny_model, batch_root, tmp_path):
    originals = policy_dataset(batch_root, "original")
    query = originals[0]
    other = next(p for p in originals if class_of(p) != class_of(query))
    listing = write_listing(tmp_path / "one.txt", [other])
    result = similarity_search(tiny_model.model, query, listing)
    assert result.successes == 0


def test_corpus_reduced_to_query_raises(tiny_model, batch_root, tmp_path):
    query = policy_dataset(batch_root, "original")[0]
    listing = write_listing(tmp_path / "self.txt", [query])
    with pytest.raises(EmptyCorpus):
        similarity_search(tiny_model.model, query, listing)


def test_distances_ascend_and_survive_json(tiny_model, original_listing):
    query = read_listing(original_listing)[3]
    result = similarity_search(tiny_model.model, query, original_listing)
    distances = [d for _, _, d in result.top4]
    assert distances == sorted(distances)
    assert all(d >= 0 for d in distances)
    payload = json.loads(json.dumps(result.to_dict()))
    assert payload["successes"] == result.successes
    assert len(payload["top4"]) == 4


def test_search_is_deterministic(tiny_model, original_listing):
    query = read_listing(original_listing)[5]
    a = similarity_search(tiny_model.model, query, original_listing)
    b = similarity_search(tiny_model.model, query, original_listing)
    assert a == b


def test_k_larger_than_corpus_returns_everything(tiny_model, batch_root, tmp_path):
    originals = policy_dataset(batch_root, "original")
    listing = write_listing(tmp_path / "few.txt", originals[:3])
    result = similarity_search(tiny_model.model, originals[0], listing, k=10)
    assert len(result.top4) == 2  # query excluded from the three


def test_k_must_be_positive(tiny_model, original_listing):
    query = read_listing(original_listing)[0]
    with pytest.raises(ValueError):
        similarity_search(tiny_model.model, query, original_listing, k=0)


def test_accepts_artifact_path(tiny_model, original_listing):
    query = read_listing(original_listing)[0]
    via_path = similarity_search(tiny_model.artifact_path, query, original_listing)
    via_model = similarity_search(tiny_model.model, query, original_listing)
    assert via_path == via_model


def test_successes_depend_only_on_distance_ranks(tiny_model, original_listing):
    """Any monotone transform of the distances leaves the outcome alone."""
    query = read_listing(original_listing)[7]
    result = similarity_search(tiny_model.model, query, original_listing)
    corpus = [p for p in read_listing(original_listing) if p != query]
    emb_c = embed_paths(tiny_model.model, corpus)
    emb_q = embed_paths(tiny_model.model, [query])[0]
    squared = np.sum((emb_c - emb_q) ** 2, axis=1)  # monotone in distance
    top = np.argsort(squared, kind="stable")[:4]
    assert [str(corpus[i]) for i in top] == [p for p, _, _ in result.top4]
    successes = sum(1 for i in top if class_of(corpus[i]) == result.query_class)
    assert successes == result.successes


def test_gap_free_queries_on_separable_classes_score_perfectly(mini_model):
    """With classes split by hue alone, every top-4 hit shares the class."""
    listing = mini_model.config.train_listing
    for query in read_listing(listing):
        result = similarity_search(mini_model.model, query, listing)
        assert result.successes == 4, query
