"""Convolutional autoencoder and its on-disk artifact format.

The encoder is three stride-2 conv blocks feeding a small linear
bottleneck; the decoder mirrors it with transposed convs. The bottleneck
vector is the similarity embedding, and the last encoder conv doubles as
the activation layer for attention overlays.

Artifacts are single files holding the weights plus a config block that
records how the model was made (listing, policy, seed, epochs), so a
scoring run can reconstruct its retrieval corpus from the artifact alone.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any

import torch
import torch.nn as nn

from .errors import ModelLoadError

ARTIFACT_FORMAT = "swatheval-autoencoder-v1"

MAX_BOTTLENECK = 256


@dataclasses.dataclass(frozen=True)
class ModelConfig:
    """Architecture plus training provenance, stored inside the artifact."""

    image_size: int = 64
    bottleneck: int = 48
    train_listing: str = ""
    policy: "str | None" = None
    seed: int = 0
    epochs: int = 0

    def __post_init__(self) -> None:
        if not 0 < self.bottleneck <= MAX_BOTTLENECK:
            raise ValueError(
                f"bottleneck must be in 1..{MAX_BOTTLENECK}, got {self.bottleneck}"
            )
        if self.image_size < 8 or self.image_size % 8 != 0:
            # three stride-2 convs need a multiple of 8
            raise ValueError(f"image_size must be a positive multiple of 8, got {self.image_size}")

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ModelConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in fields})


class GapAutoencoder(nn.Module):
    """Small conv autoencoder; ``embed`` is the retrieval representation."""

    def __init__(self, config: "ModelConfig | None" = None):
        super().__init__()
        self.config = config or ModelConfig()
        side = self.config.image_size // 8
        self._feat = 64 * side * side
        self.enc = nn.Sequential(
            nn.Conv2d(3, 16, 3, 2, 1), nn.ReLU(),
            nn.Conv2d(16, 32, 3, 2, 1), nn.ReLU(),
            nn.Conv2d(32, 64, 3, 2, 1), nn.ReLU(),
        )
        self.fc_e = nn.Linear(self._feat, self.config.bottleneck)
        self.fc_d = nn.Linear(self.config.bottleneck, self._feat)
        self.dec = nn.Sequential(
            nn.ConvTranspose2d(64, 32, 4, 2, 1), nn.ReLU(),
            nn.ConvTranspose2d(32, 16, 4, 2, 1), nn.ReLU(),
            nn.ConvTranspose2d(16, 3, 4, 2, 1), nn.Sigmoid(),
        )

    def embed(self, x: torch.Tensor) -> torch.Tensor:
        h = self.enc(x)
        return self.fc_e(h.flatten(1))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        z = self.embed(x)
        side = self.config.image_size // 8
        h = self.fc_d(z).relu().view(-1, 64, side, side)
        return self.dec(h)

    def activations(self, x: torch.Tensor, layer: int = 3) -> torch.Tensor:
        """Feature maps of the ``layer``-th encoder conv (1-based), pre-ReLU."""
        if not 1 <= layer <= 3:
            raise ValueError(f"layer must be 1..3, got {layer}")
        h = x
        seen = 0
        for m in self.enc:
            h = m(h)
            if isinstance(m, nn.Conv2d):
                seen += 1
                if seen == layer:
                    return h
        raise AssertionError("unreachable")


def save_model(model: GapAutoencoder, path: "str | Path") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save(
        {
            "format": ARTIFACT_FORMAT,
            "config": model.config.to_dict(),
            "state": model.state_dict(),
        },
        path,
    )
    return path


def as_model(model: "GapAutoencoder | str | Path") -> GapAutoencoder:
    """Pass a loaded model through; load an artifact path."""
    if isinstance(model, GapAutoencoder):
        return model
    return load_model(model)


def load_model(path: "str | Path") -> GapAutoencoder:
    """Rebuild a model from an artifact file.

    Any failure mode, like a missing file, a foreign or truncated payload,
    or weights that do not fit the declared config, raises ModelLoadError.
    """
    try:
        payload = torch.load(Path(path), map_location="cpu", weights_only=True)
    except Exception as exc:
        raise ModelLoadError(f"cannot read model artifact {path}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != ARTIFACT_FORMAT:
        raise ModelLoadError(f"{path} is not a {ARTIFACT_FORMAT} artifact")
    try:
        config = ModelConfig.from_dict(payload["config"])
        model = GapAutoencoder(config)
        model.load_state_dict(payload["state"])
    except (KeyError, ValueError, TypeError, RuntimeError) as exc:
        raise ModelLoadError(f"malformed model artifact {path}: {exc}") from exc
    model.eval()
    return model
