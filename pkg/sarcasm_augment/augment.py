"""
Minority-class growth by nearest-neighbor word replacement.

A generated sentence is a source sentence with up to
``words_per_sentence`` eligible words swapped for one of their closest
embedding neighbors. Sources are visited round-robin over a seeded
permutation, and each (sample, attempt) pair draws from its own random
stream, so the output does not depend on how many workers generate it.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from typing import TYPE_CHECKING

import numpy as np

from .exceptions import ValidationError
from .preprocess import load_stopwords
from .types.corpus import Dataset, Origin, Sample, Split
from .types.results import AugmentReport
from .utils import derive_seed, round_half_up_int

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .embeddings import EmbeddingTable, Neighbor
    from .types.config import AugmentPolicy

logger = logging.getLogger(__name__)

__all__ = [
    "NeighborCache",
    "augment_class",
    "augment_sentence",
    "eligible_words",
    "requested_count",
]


class NeighborCache:
    """
    Memoized admissible-neighbor lists for one (table, k, min_similarity).

    Safe to share between threads; every entry is computed from the
    immutable table, so a race can only compute the same list twice.
    """

    def __init__(self, table: EmbeddingTable, k: int, min_similarity: float):
        self.table = table
        self.k = k
        self.min_similarity = min_similarity
        self._cache: dict[str, list[Neighbor]] = {}
        self._lock = threading.Lock()

    def get(self, word: str) -> list[Neighbor]:
        """Top-k neighbors of ``word`` at or above the similarity floor."""
        with self._lock:
            hit = self._cache.get(word)
        if hit is not None:
            return hit
        neighbors = self.table.nearest_neighbors(word, self.k, self.min_similarity)
        with self._lock:
            self._cache.setdefault(word, neighbors)
        return neighbors


def eligible_words(
    tokens: Sequence[str],
    t: EmbeddingTable,
    stopwords: frozenset[str] | set[str],
) -> list[int]:
    """
    Positions of tokens that may be replaced.

    A token is eligible when it is alphabetic, not a stopword, and has a
    non-zero vector in the table. Whether it has admissible neighbors is
    decided later, at replacement time.

    Example:
        >>> eligible_words(["the", "good", "day"], table, {"the"})
        [1, 2]
    """
    eligible = []
    for index, token in enumerate(tokens):
        if not token.isalpha() or token in stopwords:
            continue
        row = t.vocab.get(token)
        if row is None or t.unit_norms[row] == 0:
            continue
        eligible.append(index)
    return eligible


def augment_sentence(
    text: str,
    t: EmbeddingTable,
    p: AugmentPolicy,
    rng: np.random.Generator,
    stopwords: frozenset[str] | set[str] | None = None,
    neighbors: NeighborCache | None = None,
) -> str | None:
    """
    Produce one variant of ``text`` by neighbor replacement.

    Eligible positions are visited in random order; each is replaced by a
    word drawn uniformly from its top ``k_candidates`` neighbors at or above
    ``min_similarity``, until ``words_per_sentence`` replacements are made.
    Positions without admissible neighbors are skipped.

    Args:
        text: Preprocessed sentence.
        t: Embedding table.
        p: Policy supplying k, the similarity floor and the replacement cap.
        rng: Random stream for this attempt.
        stopwords: Words never replaced (the shipped list when None).
        neighbors: Shared neighbor cache; built on the fly when None.

    Returns:
        The new sentence, differing from ``text`` in at least one token, or
        None when no eligible word has an admissible neighbor.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    cache = neighbors or NeighborCache(t, p.k_candidates, p.min_similarity)
    tokens = text.split()
    positions = eligible_words(tokens, t, stopwords)
    if not positions:
        return None

    replaced = 0
    for position in rng.permutation(np.asarray(positions, dtype=np.int64)):
        candidates = cache.get(tokens[position])
        if not candidates:
            continue
        choice = candidates[int(rng.integers(len(candidates)))]
        tokens[position] = choice.word
        replaced += 1
        if replaced >= p.words_per_sentence:
            break
    return " ".join(tokens) if replaced else None


def requested_count(increase_pct: float, class_count: int) -> int:
    """
    Number of samples to generate, rounded half-up.

    Example:
        >>> requested_count(10, 549)
        55
    """
    return round_half_up_int(Decimal(str(increase_pct)) * class_count / 100)


def augment_class(
    d: Dataset,
    t: EmbeddingTable,
    p: AugmentPolicy,
    stopwords: frozenset[str] | set[str] | None = None,
    workers: int = 1,
) -> tuple[Dataset, AugmentReport]:
    """
    Grow ``p.target_label`` in the train split by ``p.increase_pct`` percent.

    Sources are the original train samples of the target label, visited
    round-robin in a seeded order. A generated text equal to any train text
    (original or generated earlier) is rejected. A source is retired once it
    yields no candidate at all or after ``max_attempts_per_sample`` tries.
    Validation and test samples are never touched.

    Args:
        d: Preprocessed dataset.
        t: Embedding table.
        p: Augmentation policy.
        stopwords: Words never replaced (the shipped list when None).
        workers: Threads generating candidates. Commits stay in source order,
            so the result is identical for any worker count.

    Returns:
        The augmented dataset and the accounting report.

    Raises:
        ValidationError: If the train split has no sample of the target label.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    train = d.split(Split.TRAIN)
    class_count = sum(1 for s in train if s.label is p.target_label)
    sources = [
        s for s in train if s.label is p.target_label and s.origin is Origin.ORIGINAL
    ]
    if not sources:
        raise ValidationError(
            f"No {p.target_label.value!r} samples in the train split of {d.name!r}",
            parameter="d",
            value=d.name,
            expected=f"train split with {p.target_label.value!r} samples",
        )

    requested = requested_count(p.increase_pct, class_count)
    cache = NeighborCache(t, p.k_candidates, p.min_similarity)
    order = [sources[i] for i in np.random.default_rng(p.seed).permutation(len(sources))]
    existing = {s.text for s in train}
    generated: list[Sample] = []
    rejected = exhausted = attempts = 0

    def generate(job: tuple[Sample, int]) -> str | None:
        sample, attempt = job
        rng = np.random.default_rng(derive_seed(p.seed, sample.id, attempt))
        return augment_sentence(sample.text, t, p, rng, stopwords, cache)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        active = order
        for attempt in range(p.max_attempts_per_sample):
            if len(generated) >= requested or not active:
                break
            survivors: list[Sample] = []
            start = 0
            while start < len(active) and len(generated) < requested:
                batch = active[start : start + max(workers, requested - len(generated))]
                start += len(batch)
                jobs = [(sample, attempt) for sample in batch]
                outputs = list(pool.map(generate, jobs)) if pool else [
                    generate(job) for job in jobs
                ]
                for sample, text in zip(batch, outputs):
                    if len(generated) >= requested:
                        break
                    attempts += 1
                    if text is None:
                        exhausted += 1
                        continue
                    survivors.append(sample)
                    if text in existing:
                        rejected += 1
                        continue
                    existing.add(text)
                    generated.append(
                        Sample(
                            id=f"{sample.id}~aug{attempt}",
                            text=text,
                            label=p.target_label,
                            origin=Origin.AUGMENTED,
                            parent_id=sample.id,
                        )
                    )
            active = survivors + active[start:]
    finally:
        if pool is not None:
            pool.shutdown()

    report = AugmentReport(
        requested=requested,
        generated=len(generated),
        rejected_duplicates=rejected,
        exhausted_sources=exhausted,
        attempts=attempts,
    )
    if report.unmet:
        logger.warning(
            "%s: generated %d of %d requested samples "
            "(%d duplicates rejected, %d sources exhausted)",
            d.name,
            report.generated,
            requested,
            rejected,
            exhausted,
        )
    else:
        logger.info("%s: generated %d augmented samples", d.name, report.generated)

    if not generated:
        return d, report
    split_of = dict(d.split_of)
    split_of.update({s.id: Split.TRAIN for s in generated})
    return d.replace(samples=(*d.samples, *generated), split_of=split_of), report
