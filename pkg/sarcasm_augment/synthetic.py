"""
Deterministic synthetic fixtures: a small embedding table and an imbalanced
corpus that is separable under it.

The table holds three word groups in 10 dimensions: sarcastic-cluster words
near ``scale * e0``, plain-cluster words near ``scale * e1``, and neutral
filler words spread over the remaining axes. Sarcastic texts mix a random
share of sarcastic-cluster words with filler, so the share sets how far a
text's mean vector sits from the class boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embeddings import EmbeddingTable
from .types.corpus import Dataset, Label, Sample, Split
from .utils import atomic_write_text, round_half_up_int
from .validation import validate_open_interval, validate_positive

__all__ = [
    "SyntheticVocab",
    "make_fixture_table",
    "make_synthetic_corpus",
    "write_glove",
]

FIXTURE_DIM = 10


def _words(prefix: str, count: int) -> list[str]:
    # two-letter suffixes from disjoint alphabets never repeat a letter thrice
    pairs = itertools.product("abcdefghij", "klmnopqrst")
    return [f"{prefix}{a}{b}" for a, b in itertools.islice(pairs, count)]


@dataclass(frozen=True)
class SyntheticVocab:
    """Word groups of the fixture table."""

    positive: tuple[str, ...]
    negative: tuple[str, ...]
    neutral: tuple[str, ...]


def make_fixture_table(
    seed: int = 0,
    n_positive: int = 35,
    n_negative: int = 35,
    n_neutral: int = 30,
    scale: float = 4.7,
    neutral_scale: float = 2.0,
    noise: float = 0.3,
) -> tuple[EmbeddingTable, SyntheticVocab]:
    """
    Build the fixture embedding table (100 words x 10 dims by default).

    Cluster words share a dominant axis, so every sarcastic-cluster word has
    the other sarcastic-cluster words as its nearest neighbors.

    Returns:
        The table and its word groups.
    """
    rng = np.random.default_rng(seed)
    vocab = SyntheticVocab(
        positive=tuple(_words("sar", n_positive)),
        negative=tuple(_words("pla", n_negative)),
        neutral=tuple(_words("fil", n_neutral)),
    )
    rows = []
    for axis, words in ((0, vocab.positive), (1, vocab.negative)):
        for _ in words:
            vector = rng.normal(0.0, noise, FIXTURE_DIM)
            vector[axis] += scale
            rows.append(vector)
    for _ in vocab.neutral:
        direction = np.zeros(FIXTURE_DIM)
        direction[2:] = rng.normal(0.0, 1.0, FIXTURE_DIM - 2)
        direction /= np.linalg.norm(direction)
        rows.append(direction * neutral_scale + rng.normal(0.0, noise, FIXTURE_DIM))
    words = [*vocab.positive, *vocab.negative, *vocab.neutral]
    return EmbeddingTable(words, np.vstack(rows)), vocab


def make_synthetic_corpus(
    vocab: SyntheticVocab,
    n_samples: int = 2000,
    positive_fraction: float = 0.1,
    seed: int = 0,
    min_tokens: int = 10,
    max_tokens: int = 20,
    min_share: float = 0.3,
    max_share: float = 0.9,
    name: str = "synthetic",
) -> Dataset:
    """
    Build an imbalanced labeled corpus over the fixture vocabulary.

    Each text has ``min_tokens..max_tokens`` words. A share drawn uniformly
    from ``[min_share, max_share]`` of them (at least one) comes from its
    class cluster; the rest are neutral filler. Under the fixture table the
    share sets how far a sarcastic text lies from the decision boundary of
    an imbalanced model, so growing the sarcastic class moves some of them
    across it. Splits are 80/10/10 by a seeded permutation.
    """
    validate_positive(n_samples, "n_samples")
    validate_open_interval(positive_fraction, 0.0, 1.0, "positive_fraction")
    rng = np.random.default_rng(seed)
    n_positive = round_half_up_int(n_samples * positive_fraction)
    labels = [Label.POSITIVE] * n_positive + [Label.NEGATIVE] * (n_samples - n_positive)
    labels = [labels[i] for i in rng.permutation(n_samples)]

    samples = []
    for index, label in enumerate(labels):
        cluster = vocab.positive if label is Label.POSITIVE else vocab.negative
        n_tokens = int(rng.integers(min_tokens, max_tokens + 1))
        share = rng.uniform(min_share, max_share)
        n_cluster = min(n_tokens, max(1, round_half_up_int(share * n_tokens)))
        tokens = [cluster[i] for i in rng.integers(len(cluster), size=n_cluster)]
        filler = rng.integers(len(vocab.neutral), size=n_tokens - n_cluster)
        tokens += [vocab.neutral[i] for i in filler]
        tokens = [tokens[i] for i in rng.permutation(len(tokens))]
        samples.append(Sample(id=f"{name}:{index}", text=" ".join(tokens), label=label))

    order = rng.permutation(n_samples)
    n_train = int(round(n_samples * 0.8))
    n_val = int(round(n_samples * 0.1))
    split_of = {}
    for rank, position in enumerate(order):
        if rank < n_train:
            split = Split.TRAIN
        elif rank < n_train + n_val:
            split = Split.VAL
        else:
            split = Split.TEST
        split_of[samples[position].id] = split
    return Dataset(name=name, samples=tuple(samples), split_of=split_of)


def write_glove(t: EmbeddingTable, path: str | Path) -> Path:
    """Write a table in GloVe text format; floats use their round-trip repr."""
    lines = [
        " ".join([word, *(repr(float(v)) for v in row)])
        for word, row in zip(t.words, t.vectors)
    ]
    return atomic_write_text(path, "\n".join(lines) + "\n")
