"""
Seeded baseline classifier over mean word embeddings.

A logistic-regression model trained by mini-batch gradient descent with the
same knobs a transformer fine-tuning run exposes: linear warmup then linear
decay of the learning rate, decoupled weight decay, gradient-norm clipping,
per-epoch shuffling from ``manual_seed``. Parameters start at zero, so a
model trained for zero epochs scores every text 0.5.

Datasets can also be exported for an external fine-tuning job with
:func:`export_for_external_trainer`.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from .corpus import load_dataset, write_dataset
from .exceptions import DimensionMismatchError, ParseError, ValidationError
from .types.config import ClassifierConfig
from .types.corpus import Dataset, Label, Split
from .utils import atomic_write_text, canonical_json, sha256_file, sha256_text
from .validation import validate_file_exists

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .embeddings import EmbeddingTable
    from .types.corpus import Sample
    from .types.results import AugmentReport

logger = logging.getLogger(__name__)

__all__ = [
    "TrainedModel",
    "TrainingHistory",
    "clip_gradient",
    "config_fingerprint",
    "evaluate",
    "export_for_external_trainer",
    "featurize",
    "fit",
    "learning_rate_at",
    "load_export",
    "load_model",
    "loss_and_gradient",
    "predict",
    "save_model",
    "sigmoid",
    "train",
    "warmup_steps",
]

EXPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TrainedModel:
    """
    Linear model ``sigmoid(weights . x + bias)``.

    Attributes:
        weights: Read-only float64 vector of length ``dim``.
        bias: Intercept.
        config_fingerprint: Hash of the training config and data.
        dim: Embedding dimension the model expects.
        max_seq_length: Token cap used when featurizing inputs.
    """

    weights: np.ndarray
    bias: float
    config_fingerprint: str
    dim: int
    max_seq_length: int = 40

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=np.float64, copy=True).reshape(-1)
        if weights.shape[0] != self.dim:
            raise DimensionMismatchError(
                "Model weights do not match its dimension",
                expected=self.dim,
                actual=weights.shape[0],
            )
        if not (np.all(np.isfinite(weights)) and math.isfinite(self.bias)):
            raise ValidationError(
                "Model parameters must be finite",
                parameter="weights",
                value="non-finite",
                expected="finite reals",
            )
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", float(self.bias))

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation (the model save format)."""
        return {
            "dim": self.dim,
            "weights": [float(w) for w in self.weights],
            "bias": self.bias,
            "config_fingerprint": self.config_fingerprint,
            "max_seq_length": self.max_seq_length,
        }


@dataclass
class TrainingHistory:
    """Per-step trace of a training run."""

    learning_rates: list[float] = field(default_factory=list)
    grad_norms: list[float] = field(default_factory=list)
    clipped_grad_norms: list[float] = field(default_factory=list)
    losses: list[float] = field(default_factory=list)
    total_steps: int = 0


def sigmoid(z: np.ndarray | float) -> np.ndarray:
    """Numerically stable logistic function; ``sigmoid(0) == 0.5`` exactly."""
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    exp_z = np.exp(z[~positive])
    out[~positive] = exp_z / (1.0 + exp_z)
    return out


def featurize(text: str, t: EmbeddingTable, max_seq_length: int = 40) -> np.ndarray:
    """
    Mean vector of the first ``max_seq_length`` in-vocabulary tokens.

    Empty or fully out-of-vocabulary texts give the zero vector.

    Example:
        >>> featurize("a b", table)  # a=(1, 0), b=(0, 1)
        array([0.5, 0.5])
    """
    rows = []
    for token in text.split():
        row = t.vocab.get(token)
        if row is None:
            continue
        rows.append(row)
        if len(rows) == max_seq_length:
            break
    if not rows:
        return np.zeros(t.dim, dtype=np.float64)
    return t.vectors[rows].mean(axis=0)


def _feature_matrix(
    samples: Sequence[Sample], t: EmbeddingTable, max_seq_length: int
) -> tuple[np.ndarray, np.ndarray]:
    features = np.vstack([featurize(s.text, t, max_seq_length) for s in samples])
    labels = np.array([1.0 if s.is_positive else 0.0 for s in samples])
    return features, labels


def loss_and_gradient(
    weights: np.ndarray, bias: float, features: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray, float]:
    """
    Mean binary cross-entropy and its gradient.

    Returns:
        ``(loss, d_loss/d_weights, d_loss/d_bias)``.
    """
    logits = features @ weights + bias
    # log(1 + e^z) - y z, the logit form of cross-entropy
    loss = float(np.mean(np.logaddexp(0.0, logits) - labels * logits))
    residual = sigmoid(logits) - labels
    n = features.shape[0]
    return loss, features.T @ residual / n, float(residual.sum() / n)


def warmup_steps(total_steps: int, warmup_ratio: float) -> int:
    """``ceil(warmup_ratio * total_steps)`` computed without float drift."""
    return math.ceil(Decimal(str(warmup_ratio)) * total_steps)


def learning_rate_at(step: int, total_steps: int, cfg: ClassifierConfig) -> float:
    """
    Learning rate at ``step`` of a ``total_steps`` run.

    Rises linearly from 0 at step 0 to ``cfg.learning_rate`` at the end of
    warmup, then falls linearly to 0 at ``total_steps``. Training executes
    steps ``0 .. total_steps - 1``, so the last update uses
    ``learning_rate / (total_steps - warmup)`` and the zero endpoint is never
    applied.
    """
    if total_steps <= 0:
        return 0.0
    warmup = warmup_steps(total_steps, cfg.warmup_ratio)
    if step < warmup:
        return cfg.learning_rate * step / warmup
    remaining = max(0, total_steps - step)
    return cfg.learning_rate * remaining / max(1, total_steps - warmup)


def clip_gradient(
    grad_w: np.ndarray, grad_b: float, max_norm: float
) -> tuple[np.ndarray, float, float, float]:
    """
    Rescale a gradient whose Euclidean norm exceeds ``max_norm``.

    Returns:
        ``(grad_w, grad_b, norm_before, norm_after)``.
    """
    norm = math.sqrt(float(grad_w @ grad_w) + grad_b * grad_b)
    if norm <= max_norm:
        return grad_w, grad_b, norm, norm
    scale = max_norm / norm
    clipped_w = grad_w * scale
    clipped_b = grad_b * scale
    return clipped_w, clipped_b, norm, math.sqrt(float(clipped_w @ clipped_w) + clipped_b**2)


def config_fingerprint(cfg: ClassifierConfig, samples: Sequence[Sample]) -> str:
    """Short hash of the training config plus the training data."""
    data = sha256_text(
        "".join(f"{s.id}\t{s.label.value}\t{s.text}\n" for s in samples)
    )
    return sha256_text(canonical_json({"config": cfg.to_dict(), "data": data}))[:16]


def fit(
    train_split: Sequence[Sample],
    cfg: ClassifierConfig,
    t: EmbeddingTable,
) -> tuple[TrainedModel, TrainingHistory]:
    """
    Train the baseline classifier and return it with its step trace.

    Raises:
        ValidationError: If the training data is empty or single-class.
    """
    samples = list(train_split)
    if not samples:
        raise ValidationError(
            "Training split is empty",
            parameter="train_split",
            value=0,
            expected="non-empty training split",
        )
    labels_present = {s.label for s in samples}
    if len(labels_present) < 2:
        raise ValidationError(
            "Training data holds a single class",
            parameter="train_split",
            value=sorted(label.value for label in labels_present),
            expected="both 'sarcastic' and 'not_sarcastic' samples",
        )

    fingerprint = config_fingerprint(cfg, samples)
    weights = np.zeros(t.dim, dtype=np.float64)
    bias = 0.0
    history = TrainingHistory()
    if cfg.num_train_epochs == 0:
        logger.warning("num_train_epochs=0: returning the zero-initialized model")
        return TrainedModel(weights, bias, fingerprint, t.dim, cfg.max_seq_length), history

    features, labels = _feature_matrix(samples, t, cfg.max_seq_length)
    n = len(samples)
    steps_per_epoch = math.ceil(n / cfg.train_batch_size)
    total = steps_per_epoch * cfg.num_train_epochs
    history.total_steps = total
    rng = np.random.default_rng(cfg.manual_seed)

    step = 0
    for epoch in range(cfg.num_train_epochs):
        order = rng.permutation(n)
        for start in range(0, n, cfg.train_batch_size):
            batch = order[start : start + cfg.train_batch_size]
            lr = learning_rate_at(step, total, cfg)
            loss, grad_w, grad_b = loss_and_gradient(
                weights, bias, features[batch], labels[batch]
            )
            grad_w, grad_b, norm, clipped = clip_gradient(
                grad_w, grad_b, cfg.max_grad_norm
            )
            weights = weights - lr * grad_w - lr * cfg.weight_decay * weights
            bias = bias - lr * grad_b
            history.learning_rates.append(lr)
            history.grad_norms.append(norm)
            history.clipped_grad_norms.append(clipped)
            history.losses.append(loss)
            step += 1
        logger.debug("epoch %d done, last batch loss %.6f", epoch, history.losses[-1])

    logger.info("Trained on %d samples for %d steps", n, total)
    return TrainedModel(weights, bias, fingerprint, t.dim, cfg.max_seq_length), history


def train(
    train_split: Sequence[Sample],
    cfg: ClassifierConfig,
    t: EmbeddingTable,
) -> TrainedModel:
    """
    Train the baseline classifier.

    Binary cross-entropy, mini-batches shuffled per epoch from
    ``cfg.manual_seed``, warmup-then-decay learning rate, decoupled weight
    decay, gradient clipping at ``cfg.max_grad_norm``. Deterministic for
    fixed inputs.

    Raises:
        ValidationError: If the training data is empty or single-class.
    """
    return fit(train_split, cfg, t)[0]


def predict(m: TrainedModel, text: str, t: EmbeddingTable) -> tuple[Label, float]:
    """
    Classify one text.

    Returns:
        ``(label, score)`` with ``score = sigmoid(w . featurize(text) + b)``;
        the label is sarcastic when ``score >= 0.5``.

    Raises:
        DimensionMismatchError: If model and table dimensions differ.
    """
    if m.dim != t.dim:
        raise DimensionMismatchError(
            "Model and embedding table dimensions differ", expected=m.dim, actual=t.dim
        )
    z = float(m.weights @ featurize(text, t, m.max_seq_length)) + m.bias
    score = float(sigmoid(np.array([z]))[0])
    return (Label.POSITIVE if score >= 0.5 else Label.NEGATIVE), score


def evaluate(m: TrainedModel, samples: Sequence[Sample], t: EmbeddingTable) -> list[Label]:
    """Predicted labels for ``samples`` in order."""
    if m.dim != t.dim:
        raise DimensionMismatchError(
            "Model and embedding table dimensions differ", expected=m.dim, actual=t.dim
        )
    if not samples:
        return []
    features = np.vstack([featurize(s.text, t, m.max_seq_length) for s in samples])
    scores = sigmoid(features @ m.weights + m.bias)
    return [Label.POSITIVE if s >= 0.5 else Label.NEGATIVE for s in scores]


def save_model(m: TrainedModel, path: str | Path) -> Path:
    """Write the model as JSON (dim, weights, bias, config fingerprint)."""
    return atomic_write_text(path, canonical_json(m.to_dict()))


def load_model(path: str | Path) -> TrainedModel:
    """
    Read a model written by :func:`save_model`.

    Raises:
        ParseError: If the file is not a valid model document.
    """
    file_path = validate_file_exists(path)
    text = file_path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
        return TrainedModel(
            weights=np.asarray(doc["weights"], dtype=np.float64),
            bias=float(doc["bias"]),
            config_fingerprint=str(doc["config_fingerprint"]),
            dim=int(doc["dim"]),
            max_seq_length=int(doc.get("max_seq_length", 40)),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(
            f"Invalid model file: {exc}", raw_output=text, source=str(file_path)
        ) from exc


def export_for_external_trainer(
    d: Dataset,
    path: str | Path,
    augment_report: AugmentReport | None = None,
    config_fingerprint: str | None = None,
    seed: int | None = None,
) -> Path:
    """
    Write ``train.jsonl``, ``val.jsonl``, ``test.jsonl`` and ``manifest.json``.

    The JSONL files use the corpus schema (``text``, ``label``, ``split``).
    The manifest records the dataset name, per-split counts, each file's
    SHA-256, the augmentation report, config fingerprint and seed, so an
    external fine-tuning job can be reproduced. Re-exporting the same dataset
    gives byte-identical files.

    Returns:
        Path of the manifest.

    Raises:
        ValidationError: If ``path`` cannot be written.
    """
    out_dir = Path(path)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        files: dict[str, dict[str, Any]] = {}
        for split in Split:
            file_path = write_dataset(
                d, out_dir / f"{split.value}.jsonl", "jsonl", splits=[split]
            )
            files[split.value] = {
                "file": file_path.name,
                "count": d.count(split),
                "sha256": sha256_file(file_path),
            }
        manifest = {
            "schema_version": EXPORT_SCHEMA_VERSION,
            "dataset": d.name,
            "label_tokens": {"positive": Label.POSITIVE.value, "negative": Label.NEGATIVE.value},
            "splits": files,
            "total": len(d),
            "augment_report": None if augment_report is None else augment_report.to_dict(),
            "config_fingerprint": config_fingerprint,
            "seed": seed,
        }
        return atomic_write_text(out_dir / "manifest.json", canonical_json(manifest))
    except OSError as exc:
        raise ValidationError(
            f"Cannot write export to {out_dir}: {exc}",
            parameter="path",
            value=str(out_dir),
            expected="writable directory",
        ) from exc


def load_export(path: str | Path) -> Dataset:
    """
    Rebuild a dataset from an export directory.

    Texts, labels and splits round-trip; ids are reassigned per split file
    (``name-train:0`` ...).
    """
    export_dir = Path(path)
    manifest = json.loads(
        validate_file_exists(export_dir / "manifest.json").read_text(encoding="utf-8")
    )
    name = manifest["dataset"]
    samples: list[Sample] = []
    split_of: dict[str, Split] = {}
    for split in Split:
        entry = manifest["splits"][split.value]
        if entry["count"] == 0:
            continue
        part = load_dataset(export_dir / entry["file"], "jsonl", name=f"{name}-{split.value}")
        samples.extend(part.samples)
        split_of.update(part.split_of)
    return Dataset(name=name, samples=tuple(samples), split_of=split_of)
