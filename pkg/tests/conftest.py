"""
Pytest configuration and fixtures for sarcasm-augment tests.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from sarcasm_augment.embeddings import EmbeddingTable
from sarcasm_augment.synthetic import make_fixture_table, make_synthetic_corpus
from sarcasm_augment.types import Dataset, Label, Sample, Split

# text, label, split
FIXTURE_ROWS = [
    ("Yeah I just LOVE waiting in traffic for hours", "sarcastic", "train"),
    ("The train was late again, what a surprise", "sarcastic", "train"),
    ("Lovely weather for a picnic today", "not_sarcastic", "train"),
    ("Finished my thesis draft tonight", "not_sarcastic", "train"),
    ("Coffee with friends this morning", "not_sarcastic", "train"),
    ("New phone arrives tomorrow", "not_sarcastic", "train"),
    ("Oh great, another Monday meeting", "sarcastic", "val"),
    ("Walked the dog along the river", "not_sarcastic", "val"),
    ("Reading a novel about sailors", "not_sarcastic", "test"),
    ("Baked bread with my grandmother", "not_sarcastic", "test"),
]


def write_rows(path: Path, rows: list[tuple[str, ...]], columns=("text", "label", "split")) -> Path:
    """Write records as a CSV file in the corpus schema."""
    pd.DataFrame(rows, columns=list(columns)).to_csv(path, index=False, lineterminator="\n")
    return path


@pytest.fixture
def fixture_csv(tmp_path: Path) -> Path:
    """
    The 10-sample fixture corpus.

    6 train / 2 val / 2 test, 3 sarcastic samples (30.00%).
    """
    return write_rows(tmp_path / "fixture.csv", FIXTURE_ROWS)


@pytest.fixture
def tiny_table() -> EmbeddingTable:
    """
    Handmade 4-d table.

    "love" and "adore" point the same way, "hate" the opposite way,
    "void" is a zero vector.
    """
    words = ["love", "adore", "enjoy", "hate", "despise", "traffic", "jams", "monday", "void"]
    vectors = [
        [1.0, 0.0, 0.0, 0.0],
        [0.95, 0.05, 0.0, 0.0],
        [0.8, 0.2, 0.1, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [-0.9, -0.1, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.9, 0.1, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
    ]
    return EmbeddingTable(words, np.array(vectors))


@pytest.fixture(scope="session")
def synthetic_fixture():
    """Fixture embedding table (100 words x 10 dims) and its word groups."""
    return make_fixture_table(seed=0)


@pytest.fixture(scope="session")
def synthetic_table(synthetic_fixture) -> EmbeddingTable:
    """Fixture embedding table."""
    return synthetic_fixture[0]


@pytest.fixture(scope="session")
def synthetic_vocab(synthetic_fixture):
    """Word groups of the fixture embedding table."""
    return synthetic_fixture[1]


@pytest.fixture
def hundred_positive_dataset(synthetic_vocab) -> Dataset:
    """
    Dataset with exactly 100 sarcastic train samples.

    Built from the synthetic corpus: 100 sarcastic + 100 plain train samples,
    20 validation and 20 test samples.
    """
    corpus = make_synthetic_corpus(synthetic_vocab, n_samples=1000, positive_fraction=0.2)
    positives = [s for s in corpus.samples if s.label is Label.POSITIVE]
    negatives = [s for s in corpus.samples if s.label is Label.NEGATIVE]
    samples: list[Sample] = []
    split_of: dict[str, Split] = {}
    for group, split in (
        (positives[:100], Split.TRAIN),
        (negatives[:100], Split.TRAIN),
        (positives[100:110] + negatives[100:110], Split.VAL),
        (positives[110:120] + negatives[110:120], Split.TEST),
    ):
        for sample in group:
            samples.append(sample)
            split_of[sample.id] = split
    return Dataset(name="hundred", samples=tuple(samples), split_of=split_of)


def make_dataset(
    texts_labels: list[tuple[str, Label]],
    name: str = "toy",
    splits: list[Split] | None = None,
) -> Dataset:
    """Build a dataset of original samples (train unless ``splits`` says otherwise)."""
    samples = tuple(
        Sample(id=f"{name}:{i}", text=text, label=label)
        for i, (text, label) in enumerate(texts_labels)
    )
    split_of = {
        s.id: (splits[i] if splits is not None else Split.TRAIN)
        for i, s in enumerate(samples)
    }
    return Dataset(name=name, samples=samples, split_of=split_of)
