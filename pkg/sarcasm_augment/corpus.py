"""
Dataset ingestion, deduplication, splitting and summary statistics.

Every function here is pure: datasets are immutable and each operation
returns a new :class:`~sarcasm_augment.types.corpus.Dataset`.

Example:
    >>> from sarcasm_augment.corpus import load_dataset, compute_stats
    >>> ds = load_dataset("isarcasm.csv")
    >>> stats = compute_stats(ds)
    >>> print(render_stats_row("iSarcasm", stats))
    iSarcasm	3,116	347	887	17.62%
"""

from __future__ import annotations

import json
import logging
from decimal import Decimal
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from .exceptions import ParseError, ValidationError
from .parsers.records import get_record_parser
from .types.corpus import (
    Dataset,
    DatasetStats,
    DedupReport,
    DroppedSample,
    Label,
    Sample,
    Split,
)
from .utils import atomic_write_text, round_half_up, round_half_up_int
from .validation import validate_file_exists, validate_open_interval

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

logger = logging.getLogger(__name__)

__all__ = [
    "compute_stats",
    "dedup",
    "infer_format",
    "load_dataset",
    "merge_train_val",
    "render_stats_row",
    "render_stats_table",
    "split_random",
    "write_dataset",
]


def infer_format(path: str | Path) -> str:
    """Guess ``csv`` or ``jsonl`` from a file suffix (default csv)."""
    suffix = Path(path).suffix.lower()
    return "jsonl" if suffix in (".jsonl", ".json", ".ndjson") else "csv"


def load_dataset(
    path: str | Path,
    format: str | None = None,
    name: str | None = None,
) -> Dataset:
    """
    Load a labeled dataset file.

    Args:
        path: CSV (``text,label[,split]``) or JSONL file.
        format: ``"csv"`` or ``"jsonl"``; inferred from the suffix when None.
        name: Dataset name; defaults to the file stem. Ids are ``name:index``.

    Returns:
        Dataset of original samples in record order. Records without a split,
        or with an unrecognized split token, go to train.

    Raises:
        InputFileNotFoundError: If the file does not exist.
        ParseError: On unreadable files, malformed records, empty texts or
            unknown label tokens; the error carries the line number.
    """
    file_path = validate_file_exists(path)
    fmt = format or infer_format(file_path)
    dataset_name = name or file_path.stem
    try:
        with file_path.open(encoding="utf-8", newline="") as handle:
            content = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(
            f"Cannot read dataset file: {exc}", raw_output="", source=str(file_path)
        ) from exc

    records = get_record_parser(fmt, source=str(file_path)).parse(content)
    samples: list[Sample] = []
    split_of: dict[str, Split] = {}
    for index, record in enumerate(records):
        raw = f"{record.text!r},{record.label!r}"
        if not isinstance(record.label, str):
            raise ParseError(
                "Record has no label", raw, record.line_number, str(file_path)
            )
        try:
            label = Label.parse(record.label)
        except ValidationError as exc:
            raise ParseError(
                f"Unknown label token {record.label!r}",
                raw_output=raw,
                line_number=record.line_number,
                source=str(file_path),
            ) from exc
        if not isinstance(record.text, str) or not record.text.strip():
            raise ParseError(
                "Record has empty text", raw, record.line_number, str(file_path)
            )

        split = Split.TRAIN
        if isinstance(record.split, str) and record.split.strip():
            try:
                split = Split.parse(record.split)
            except ValidationError:
                logger.warning(
                    "%s line %d: unknown split %r, assigning train",
                    file_path,
                    record.line_number,
                    record.split,
                )

        sample_id = f"{dataset_name}:{index}"
        samples.append(Sample(id=sample_id, text=record.text, label=label))
        split_of[sample_id] = split

    logger.info("Loaded %d samples from %s", len(samples), file_path)
    return Dataset(name=dataset_name, samples=tuple(samples), split_of=split_of)


def write_dataset(
    d: Dataset,
    path: str | Path,
    format: str | None = None,
    splits: Iterable[Split] | None = None,
) -> Path:
    """
    Write a dataset in the corpus schema (``text``, ``label``, ``split``).

    Args:
        d: Dataset to write.
        path: Destination file.
        format: ``"csv"`` or ``"jsonl"``; inferred from the suffix when None.
        splits: Restrict output to these splits (all by default).

    Returns:
        The written path. Output bytes depend only on the dataset.
    """
    fmt = format or infer_format(path)
    wanted = set(splits) if splits is not None else set(Split)
    rows = [
        {"text": s.text, "label": s.label.value, "split": d.split_of[s.id].value}
        for s in d.samples
        if d.split_of[s.id] in wanted
    ]
    if fmt == "jsonl":
        content = "".join(
            json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n" for row in rows
        )
    elif fmt == "csv":
        frame = pd.DataFrame(rows, columns=["text", "label", "split"])
        content = frame.to_csv(index=False, lineterminator="\n")
    else:
        raise ValidationError(
            f"Unsupported dataset format: {fmt}",
            parameter="format",
            value=fmt,
            expected="'csv' or 'jsonl'",
        )
    return atomic_write_text(path, content)


def _percent(part: int, whole: int) -> float:
    if whole == 0:
        return 0.0
    return float(round_half_up(Decimal(part) * 100 / Decimal(whole), 2))


def compute_stats(d: Dataset) -> DatasetStats:
    """
    Count samples per split and the sarcastic percentage.

    ``pct_positive`` is computed over all splits; the per-split percentages
    are in ``pct_positive_by_split``. Both are rounded half-up to 2 decimals.

    Example:
        >>> compute_stats(empty_dataset)
        DatasetStats(n_train=0, n_val=0, n_test=0, pct_positive=0.0, ...)
    """
    counts = {split: 0 for split in Split}
    positives = {split: 0 for split in Split}
    for sample in d.samples:
        split = d.split_of[sample.id]
        counts[split] += 1
        if sample.is_positive:
            positives[split] += 1
    total = sum(counts.values())
    return DatasetStats(
        n_train=counts[Split.TRAIN],
        n_val=counts[Split.VAL],
        n_test=counts[Split.TEST],
        pct_positive=_percent(sum(positives.values()), total),
        pct_positive_by_split={
            split.value: _percent(positives[split], counts[split]) for split in Split
        },
    )


def render_stats_row(name: str, stats: DatasetStats) -> str:
    """
    Render one tab-separated dataset statistics line.

    Example:
        >>> render_stats_row("iSarcasm", DatasetStats(3116, 347, 887, 17.62))
        'iSarcasm\\t3,116\\t347\\t887\\t17.62%'
    """
    return (
        f"{name}\t{stats.n_train:,}\t{stats.n_val:,}\t{stats.n_test:,}\t"
        f"{round_half_up(stats.pct_positive, 2):.2f}%"
    )


def render_stats_table(rows: Sequence[tuple[str, DatasetStats]]) -> str:
    """Render a header plus one :func:`render_stats_row` line per dataset."""
    lines = ["Dataset\tTrain\tVal\tTest\t% Sarcasm"]
    lines.extend(render_stats_row(name, stats) for name, stats in rows)
    return "\n".join(lines) + "\n"


def dedup(datasets: Sequence[Dataset]) -> tuple[list[Dataset], DedupReport]:
    """
    Drop duplicate texts within and across datasets.

    Texts are compared by exact codepoint equality, so run preprocessing
    first. Inside a dataset the first occurrence survives; across datasets
    the one listed earlier keeps a shared text.

    Args:
        datasets: Datasets in priority order.

    Returns:
        The filtered datasets (same order) and a report naming every dropped
        id with reason ``"within"`` or ``"across"``.
    """
    owner: dict[str, str] = {}
    dropped: list[DroppedSample] = []
    outputs: list[Dataset] = []

    for d in datasets:
        local: dict[str, str] = {}
        kept: list[Sample] = []
        remap: dict[str, str] = {}
        removed: set[str] = set()
        for sample in d.samples:
            if sample.text in local:
                dropped.append(
                    DroppedSample(sample.id, d.name, "within", kept_id=local[sample.text])
                )
                remap[sample.id] = local[sample.text]
                removed.add(sample.id)
            elif sample.text in owner:
                dropped.append(
                    DroppedSample(sample.id, d.name, "across", kept_id=owner[sample.text])
                )
                removed.add(sample.id)
            elif sample.parent_id is not None and sample.parent_id in removed and (
                sample.parent_id not in remap
            ):
                dropped.append(DroppedSample(sample.id, d.name, "across", kept_id=None))
                removed.add(sample.id)
            else:
                local[sample.text] = sample.id
                if sample.parent_id in remap:
                    sample = Sample(
                        id=sample.id,
                        text=sample.text,
                        label=sample.label,
                        origin=sample.origin,
                        parent_id=remap[sample.parent_id],
                    )
                kept.append(sample)
        owner.update(local)
        if removed:
            split_of = {s.id: d.split_of[s.id] for s in kept}
            outputs.append(d.replace(samples=kept, split_of=split_of))
        else:
            outputs.append(d)

    report = DedupReport(dropped=tuple(dropped))
    if dropped:
        logger.info(
            "Dedup dropped %d samples (%d within, %d across)",
            len(dropped),
            report.n_within,
            report.n_across,
        )
    return outputs, report


def merge_train_val(d: Dataset) -> Dataset:
    """
    Fold validation into train and promote test to validation.

    No sample is added or removed; splits of 8/1/1 become 9/1/0.
    """
    moves = {Split.TRAIN: Split.TRAIN, Split.VAL: Split.TRAIN, Split.TEST: Split.VAL}
    return d.replace(split_of={sid: moves[split] for sid, split in d.split_of.items()})


def split_random(d: Dataset, fraction: float, seed: int) -> Dataset:
    """
    Move a seeded random share of train samples to validation.

    ``round_half_up(fraction * n_train)`` samples move; the same seed always
    picks the same samples.

    Raises:
        ValidationError: If ``fraction`` is outside (0, 1) or train is empty.
    """
    validate_open_interval(fraction, 0.0, 1.0, "fraction")
    train_ids = [s.id for s in d.split(Split.TRAIN)]
    if not train_ids:
        raise ValidationError(
            f"Dataset {d.name!r} has no train samples to split",
            parameter="d",
            value=d.name,
            expected="non-empty train split",
        )
    n_move = round_half_up_int(Decimal(str(fraction)) * len(train_ids))
    if n_move == 0:
        logger.warning(
            "split_random(%s): fraction %s of %d train samples rounds to 0; "
            "nothing moved",
            d.name,
            fraction,
            len(train_ids),
        )
        return d
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(train_ids))
    moved = {train_ids[i] for i in order[:n_move]}
    split_of = {
        sid: (Split.VAL if sid in moved else split) for sid, split in d.split_of.items()
    }
    return d.replace(split_of=split_of)
