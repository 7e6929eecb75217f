"""Retrieval-based evaluation harness for swath gap fill policies.

Trains small convolutional autoencoders on the image sets a fill
pipeline batch produces (one per fill policy), scores each policy by
top-k same-class retrieval success, and renders activation-map overlays
with a gap-attention ratio. All input arrives through the batch
directory's files; all randomness is seeded.
"""

from .attention import AttentionReport, activation_map, attention_from_map, compute_activation_map
from .data import POLICIES, policy_dataset, read_listing, split_dataset, write_listing
from .errors import (
    EmptyCorpus,
    EmptyListing,
    MaskMismatch,
    ModelLoadError,
    SwathEvalError,
)
from .model import GapAutoencoder, ModelConfig, load_model, save_model
from .scoring import (
    PolicyScore,
    aggregate,
    mean_successes,
    score_policies,
    write_scores_csv,
    write_summary_csv,
)
from .search import SimilarityResult, embed_paths, similarity_search
from .texture import CLASS_NAMES, make_texture_corpus
from .train import TrainResult, train_autoencoder

__version__ = "0.1.0"

__all__ = [
    "AttentionReport",
    "CLASS_NAMES",
    "EmptyCorpus",
    "EmptyListing",
    "GapAutoencoder",
    "MaskMismatch",
    "ModelConfig",
    "ModelLoadError",
    "POLICIES",
    "PolicyScore",
    "SimilarityResult",
    "SwathEvalError",
    "TrainResult",
    "activation_map",
    "aggregate",
    "attention_from_map",
    "compute_activation_map",
    "embed_paths",
    "load_model",
    "make_texture_corpus",
    "mean_successes",
    "policy_dataset",
    "read_listing",
    "save_model",
    "score_policies",
    "similarity_search",
    "split_dataset",
    "train_autoencoder",
    "write_listing",
    "write_scores_csv",
    "write_summary_csv",
    "__version__",
]
