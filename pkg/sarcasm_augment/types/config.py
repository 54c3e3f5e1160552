"""Configuration dataclasses for every pipeline stage."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

from ..exceptions import ValidationError
from ..validation import (
    validate_non_empty,
    validate_non_negative,
    validate_positive,
    validate_range,
)
from .corpus import Label

LENGTH_UNITS = ("tokens", "chars")
DATASET_FORMATS = ("csv", "jsonl")

# train-split size from which the large-corpus profile applies
LARGE_DATASET_THRESHOLD = 10_000


@dataclass(frozen=True)
class PipelineConfig:
    """
    Text cleaning options.

    All strip flags default on. ``stopword_list`` overrides the list read from
    ``stopwords_path``; when both are None the shipped list is used.
    """

    max_len_tokens: int = 100
    length_unit: str = "tokens"
    lowercase: bool = True
    strip_urls: bool = True
    strip_hashtags: bool = True
    strip_mentions: bool = True
    strip_emoji: bool = True
    strip_non_ascii: bool = True
    strip_punctuation: bool = True
    remove_stopwords: bool = True
    strip_bracketed: bool = True
    stopword_list: frozenset[str] | None = None
    stopwords_path: str | None = None
    contractions_path: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.max_len_tokens, bool) or not isinstance(
            self.max_len_tokens, int
        ):
            raise ValidationError(
                "max_len_tokens must be an integer",
                parameter="max_len_tokens",
                value=self.max_len_tokens,
                expected="int >= 1",
            )
        validate_positive(self.max_len_tokens, "max_len_tokens")
        if self.length_unit not in LENGTH_UNITS:
            raise ValidationError(
                f"Unknown length unit {self.length_unit!r}",
                parameter="length_unit",
                value=self.length_unit,
                expected=" or ".join(LENGTH_UNITS),
            )
        if self.stopword_list is not None:
            words = frozenset(self.stopword_list)
            bad = sorted(w for w in words if not w or w != w.lower() or w.split() != [w])
            if bad:
                raise ValidationError(
                    "Stopwords must be lowercase single tokens",
                    parameter="stopword_list",
                    value=bad[:5],
                    expected="lowercase tokens without whitespace",
                )
            object.__setattr__(self, "stopword_list", words)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        data = asdict(self)
        if self.stopword_list is not None:
            data["stopword_list"] = sorted(self.stopword_list)
        return data


@dataclass(frozen=True)
class AugmentPolicy:
    """
    How much and how to grow the target class.

    Attributes:
        target_label: Class to grow.
        increase_pct: Growth in percent of the class's train count.
        words_per_sentence: Maximum replacements per generated sentence.
        k_candidates: Neighbor pool size a replacement is drawn from.
        min_similarity: Cosine floor for admissible neighbors.
        seed: Master seed for source order and per-sample streams.
        max_attempts_per_sample: Generation attempts before a source is retired.
    """

    target_label: Label = Label.POSITIVE
    increase_pct: float = 10.0
    words_per_sentence: int = 1
    k_candidates: int = 5
    min_similarity: float = 0.5
    seed: int = 0
    max_attempts_per_sample: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "target_label", Label(self.target_label))
        validate_positive(self.increase_pct, "increase_pct")
        validate_positive(self.words_per_sentence, "words_per_sentence")
        validate_positive(self.k_candidates, "k_candidates")
        validate_positive(self.max_attempts_per_sample, "max_attempts_per_sample")
        if not math.isfinite(self.min_similarity):
            raise ValidationError(
                "min_similarity must be finite",
                parameter="min_similarity",
                value=self.min_similarity,
                expected="finite real",
            )

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        data = asdict(self)
        data["target_label"] = self.target_label.value
        return data


@dataclass(frozen=True)
class ClassifierConfig:
    """
    Training knobs of the baseline classifier.

    ``fp16`` is recorded for fingerprinting but training always runs in float64.
    """

    learning_rate: float = 1e-5
    weight_decay: float = 0.01
    warmup_ratio: float = 0.2
    max_grad_norm: float = 1.0
    num_train_epochs: int = 13
    train_batch_size: int = 16
    max_seq_length: int = 40
    manual_seed: int = 128
    fp16: bool = True

    def __post_init__(self) -> None:
        validate_positive(self.learning_rate, "learning_rate")
        validate_non_negative(self.weight_decay, "weight_decay")
        validate_range(self.warmup_ratio, 0, 1, "warmup_ratio")
        validate_positive(self.max_grad_norm, "max_grad_norm")
        validate_non_negative(self.num_train_epochs, "num_train_epochs")
        validate_positive(self.train_batch_size, "train_batch_size")
        validate_positive(self.max_seq_length, "max_seq_length")

    @classmethod
    def for_dataset_size(cls, n_train: int, **overrides: Any) -> ClassifierConfig:
        """
        Pick the batch/epoch profile by training-set size.

        Large crawled corpora train with batch 32 for 8 epochs; small annotated
        ones with batch 16 for 13 epochs.

        Example:
            >>> ClassifierConfig.for_dataset_size(51_009).train_batch_size
            32
            >>> ClassifierConfig.for_dataset_size(3_116).num_train_epochs
            13
        """
        if n_train >= LARGE_DATASET_THRESHOLD:
            profile: dict[str, Any] = {"train_batch_size": 32, "num_train_epochs": 8}
        else:
            profile = {"train_batch_size": 16, "num_train_epochs": 13}
        profile.update(overrides)
        return cls(**profile)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return asdict(self)


@dataclass(frozen=True)
class DatasetSource:
    """One input corpus of an experiment."""

    name: str
    path: str
    format: str = "csv"

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError(
                "Dataset name must be non-empty",
                parameter="name",
                value=self.name,
                expected="non-empty string",
            )
        if "/" in self.name or "\\" in self.name or self.name in (".", ".."):
            raise ValidationError(
                f"Dataset name {self.name!r} cannot be used as a directory name",
                parameter="name",
                value=self.name,
                expected="name without path separators, not '.' or '..'",
            )
        if self.format not in DATASET_FORMATS:
            raise ValidationError(
                f"Unknown dataset format {self.format!r}",
                parameter="format",
                value=self.format,
                expected=" or ".join(DATASET_FORMATS),
            )


@dataclass(frozen=True)
class ExperimentPlan:
    """
    The full (dataset x augmentation level x seed) matrix to run.

    ``classifier=None`` picks :meth:`ClassifierConfig.for_dataset_size` per
    dataset. ``augment`` is a template whose ``increase_pct`` and ``seed`` are
    replaced per cell.
    """

    datasets: tuple[DatasetSource, ...]
    embeddings: str
    output_dir: str
    levels: tuple[float, ...] = (0, 10, 20, 30)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    augment: AugmentPolicy = field(default_factory=AugmentPolicy)
    classifier: ClassifierConfig | None = None
    master_seed: int = 128
    seeds: tuple[int, ...] = ()
    workers: int = 1
    deltas: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        validate_non_empty(self.datasets, "datasets")
        validate_non_empty(self.levels, "levels")
        names = [d.name for d in self.datasets]
        if len(set(names)) != len(names):
            raise ValidationError(
                "Dataset names must be unique",
                parameter="datasets",
                value=names,
                expected="unique names",
            )
        for level in self.levels:
            validate_non_negative(level, "levels")
        if len(set(self.levels)) != len(self.levels):
            raise ValidationError(
                "Augmentation levels must be unique",
                parameter="levels",
                value=self.levels,
                expected="unique percentages",
            )
        if self.deltas and 0 not in self.levels:
            raise ValidationError(
                "Level 0 is required when deltas are requested",
                parameter="levels",
                value=self.levels,
                expected="levels containing 0",
            )
        validate_positive(self.workers, "workers")

    @property
    def run_seeds(self) -> tuple[int, ...]:
        """Seeds each cell is run with (``(master_seed,)`` by default)."""
        return self.seeds or (self.master_seed,)
