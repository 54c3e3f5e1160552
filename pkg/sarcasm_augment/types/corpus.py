"""Corpus type definitions: samples, datasets and their summaries."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType

from ..exceptions import ValidationError


class Label(str, Enum):
    """Binary class token; ``POSITIVE`` is the sarcastic class."""

    POSITIVE = "sarcastic"
    NEGATIVE = "not_sarcastic"

    @classmethod
    def parse(cls, token: str) -> Label:
        """
        Map a label token to a Label.

        Raises:
            ValidationError: If the token is not one of the two class tokens.
        """
        try:
            return cls(token.strip())
        except ValueError:
            raise ValidationError(
                f"Unknown label token: {token!r}",
                parameter="label",
                value=token,
                expected=" or ".join(repr(m.value) for m in cls),
            ) from None

    @property
    def other(self) -> Label:
        """The opposite class."""
        return Label.NEGATIVE if self is Label.POSITIVE else Label.POSITIVE


class Origin(str, Enum):
    """Whether a sample came from the source file or was generated."""

    ORIGINAL = "original"
    AUGMENTED = "augmented"


class Split(str, Enum):
    """Dataset partition a sample is assigned to."""

    TRAIN = "train"
    VAL = "val"
    TEST = "test"

    @classmethod
    def parse(cls, token: str) -> Split:
        """
        Map a split token to a Split.

        Raises:
            ValidationError: If the token is not train/val/test.
        """
        try:
            return cls(token.strip())
        except ValueError:
            raise ValidationError(
                f"Unknown split token: {token!r}",
                parameter="split",
                value=token,
                expected="'train', 'val' or 'test'",
            ) from None


@dataclass(frozen=True)
class Sample:
    """One labeled text with provenance."""

    id: str
    text: str
    label: Label
    origin: Origin = Origin.ORIGINAL
    parent_id: str | None = None

    def __post_init__(self) -> None:
        if not self.text:
            raise ValidationError(
                f"Sample {self.id} has empty text",
                parameter="text",
                value=self.text,
                expected="Non-empty string",
            )
        if self.origin is Origin.AUGMENTED and self.parent_id is None:
            raise ValidationError(
                f"Augmented sample {self.id} has no parent_id",
                parameter="parent_id",
                value=None,
                expected="Id of the original sample",
            )
        if self.origin is Origin.ORIGINAL and self.parent_id is not None:
            raise ValidationError(
                f"Original sample {self.id} must not carry a parent_id",
                parameter="parent_id",
                value=self.parent_id,
                expected="None",
            )

    @property
    def is_positive(self) -> bool:
        """True when the sample carries the sarcastic label."""
        return self.label is Label.POSITIVE


@dataclass(frozen=True)
class Dataset:
    """
    A named, ordered collection of samples with a split assignment per id.

    Datasets are immutable: every operation in :mod:`sarcasm_augment.corpus`
    returns a new instance.

    Attributes:
        name: Dataset name, also the prefix of original sample ids.
        samples: Samples in record order.
        split_of: Mapping from sample id to its split.
    """

    name: str
    samples: tuple[Sample, ...]
    split_of: Mapping[str, Split]

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "split_of", MappingProxyType(dict(self.split_of)))

        ids = [s.id for s in self.samples]
        seen: set[str] = set()
        for sample_id in ids:
            if sample_id in seen:
                raise ValidationError(
                    f"Duplicate sample id {sample_id!r} in dataset {self.name!r}",
                    parameter="samples",
                    value=sample_id,
                    expected="Unique ids",
                )
            seen.add(sample_id)
        if seen != set(self.split_of):
            missing = sorted(seen - set(self.split_of))
            extra = sorted(set(self.split_of) - seen)
            raise ValidationError(
                f"split_of must cover exactly the sample ids of {self.name!r}",
                parameter="split_of",
                value={"missing": missing[:5], "unknown": extra[:5]},
                expected="One split entry per sample id",
            )
        for sample in self.samples:
            if sample.parent_id is not None and sample.parent_id not in seen:
                raise ValidationError(
                    f"parent_id {sample.parent_id!r} of {sample.id!r} does not resolve",
                    parameter="parent_id",
                    value=sample.parent_id,
                    expected="Id of a sample in the same dataset",
                )

    def __len__(self) -> int:
        """Number of samples."""
        return len(self.samples)

    @property
    def ids(self) -> list[str]:
        """Sample ids in order."""
        return [s.id for s in self.samples]

    def split(self, split: Split) -> tuple[Sample, ...]:
        """Samples assigned to ``split``, in dataset order."""
        return tuple(s for s in self.samples if self.split_of[s.id] is split)

    def count(self, split: Split) -> int:
        """Number of samples in ``split``."""
        return sum(1 for s in self.samples if self.split_of[s.id] is split)

    def get(self, sample_id: str) -> Sample | None:
        """Look up a sample by id."""
        for sample in self.samples:
            if sample.id == sample_id:
                return sample
        return None

    def replace(
        self,
        samples: tuple[Sample, ...] | list[Sample] | None = None,
        split_of: Mapping[str, Split] | None = None,
        name: str | None = None,
    ) -> Dataset:
        """Return a copy with the given fields swapped in."""
        return Dataset(
            name=self.name if name is None else name,
            samples=tuple(self.samples if samples is None else samples),
            split_of=self.split_of if split_of is None else split_of,
        )


@dataclass(frozen=True)
class DatasetStats:
    """
    Split counts and class proportion of a dataset.

    Attributes:
        n_train, n_val, n_test: Samples per split.
        pct_positive: Percentage of sarcastic samples over all splits, 2 decimals.
        pct_positive_by_split: Same percentage computed within each split.
    """

    n_train: int
    n_val: int
    n_test: int
    pct_positive: float
    pct_positive_by_split: Mapping[str, float] = field(default_factory=dict)

    @property
    def total(self) -> int:
        """Total number of samples."""
        return self.n_train + self.n_val + self.n_test


@dataclass(frozen=True)
class DroppedSample:
    """One sample removed by preprocessing or deduplication."""

    id: str
    dataset: str
    reason: str
    kept_id: str | None = None


@dataclass(frozen=True)
class DedupReport:
    """Audit trail of :func:`sarcasm_augment.corpus.dedup`."""

    dropped: tuple[DroppedSample, ...] = ()

    @property
    def dropped_ids(self) -> list[str]:
        """Ids of every dropped sample."""
        return [d.id for d in self.dropped]

    @property
    def n_within(self) -> int:
        """Number of samples dropped as duplicates inside their own dataset."""
        return sum(1 for d in self.dropped if d.reason == "within")

    @property
    def n_across(self) -> int:
        """Number of samples dropped because an earlier dataset holds the text."""
        return sum(1 for d in self.dropped if d.reason == "across")

    def __bool__(self) -> bool:
        return bool(self.dropped)


@dataclass(frozen=True)
class DropReport:
    """Samples removed by preprocessing because their text became empty."""

    dataset: str
    dropped: tuple[DroppedSample, ...] = ()

    @property
    def dropped_ids(self) -> list[str]:
        """Ids of every dropped sample."""
        return [d.id for d in self.dropped]
