"""Seeded autoencoder training driven by a listing file.

The listing is a plain text file of image paths, one per line, with
relative entries resolved against the listing's own directory; the split
files emitted by the fill pipeline's batch command work as-is. Identical
seed, listing, and epochs reproduce the run exactly on the same software
stack; final losses agree to within 1e-6 across reruns.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

import torch

from .data import load_batch, read_listing
from .errors import EmptyListing
from .model import GapAutoencoder, ModelConfig, save_model


@dataclasses.dataclass(frozen=True)
class TrainResult:
    model: GapAutoencoder
    config: ModelConfig
    initial_loss: float
    final_loss: float
    epoch_losses: tuple[float, ...]
    artifact_path: "Path | None"


def _full_set_loss(model: GapAutoencoder, x: torch.Tensor, batch_size: int) -> float:
    tot = 0.0
    with torch.no_grad():
        for i in range(0, x.shape[0], batch_size):
            xb = x[i : i + batch_size]
            tot += float(((model(xb) - xb) ** 2).mean()) * xb.shape[0]
    return tot / x.shape[0]


def train_autoencoder(
    train_listing: "str | Path",
    epochs: int,
    seed: int,
    *,
    image_size: int = 64,
    bottleneck: int = 48,
    batch_size: int = 16,
    lr: float = 2e-3,
    out_path: "str | Path | None" = None,
    policy: "str | None" = None,
) -> TrainResult:
    """Train the autoencoder on every image named by the listing.

    Reconstruction MSE, Adam, fixed-seed init and shuffling. When
    ``out_path`` is given the weights and config (including the listing
    path, policy tag, seed, and epochs) are saved there as one artifact.
    Raises EmptyListing when the listing names no images; unreadable
    image files surface as the loader's own OSError.
    """
    listing = Path(train_listing)
    paths = read_listing(listing)
    if not paths:
        raise EmptyListing(f"{listing} names no images")
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")

    config = ModelConfig(
        image_size=image_size,
        bottleneck=bottleneck,
        train_listing=str(listing.resolve()),
        policy=policy,
        seed=seed,
        epochs=epochs,
    )
    x = load_batch(paths, size=image_size)

    torch.manual_seed(seed)
    model = GapAutoencoder(config)
    opt = torch.optim.Adam(model.parameters(), lr=lr)
    shuffle = torch.Generator().manual_seed(seed + 1)

    initial_loss = _full_set_loss(model, x, batch_size)

    n = x.shape[0]
    epoch_losses: list[float] = []
    for _ in range(epochs):
        order = torch.randperm(n, generator=shuffle)
        tot = 0.0
        for i in range(0, n, batch_size):
            idx = order[i : i + batch_size]
            xb = x[idx]
            loss = ((model(xb) - xb) ** 2).mean()
            opt.zero_grad()
            loss.backward()
            opt.step()
            tot += loss.item() * len(idx)
        epoch_losses.append(tot / n)

    final_loss = _full_set_loss(model, x, batch_size)
    model.eval()

    artifact_path = None
    if out_path is not None:
        artifact_path = save_model(model, out_path)

    return TrainResult(
        model=model,
        config=config,
        initial_loss=initial_loss,
        final_loss=final_loss,
        epoch_losses=tuple(epoch_losses),
        artifact_path=artifact_path,
    )
