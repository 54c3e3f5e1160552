"""
Experiment matrix: (dataset x augmentation level x seed) runs and reports.

Results directory layout::

    <output_dir>/
        manifest.json                 # run list, failures, input checksums
        runs/<dataset>/<level>.json   # one RunResult per cell
        models/<dataset>/<level>.json # trained model of that cell

With several seeds the per-cell files are named ``<level>.seed<seed>.json``.
Every file is canonical JSON, so the same plan on the same inputs always
produces the same bytes regardless of ``workers``.
"""

from __future__ import annotations

import json
import logging
import time
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import pandas as pd

from .augment import augment_class
from .classify import evaluate, save_model, train
from .corpus import dedup, load_dataset, merge_train_val
from .embeddings import load_embeddings
from .exceptions import ParseError, ValidationError
from .metrics import compare_runs, metric_set, point_change
from .preprocess import preprocess_dataset, resolve_stopwords
from .types.config import ClassifierConfig
from .types.corpus import Split
from .types.results import ConfusionMatrix, MetricSet, RunFailure, RunResult
from .utils import (
    atomic_write_text,
    canonical_json,
    derive_seed,
    format_fixed,
    normalize_level,
    sha256_file,
)
from .validation import validate_file_exists

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .embeddings import EmbeddingTable
    from .types.config import DatasetSource, ExperimentPlan
    from .types.corpus import Dataset

logger = logging.getLogger(__name__)

__all__ = [
    "ExperimentOutcome",
    "REPORT_FORMATS",
    "emit_report",
    "level_header",
    "load_results",
    "normalize_level",
    "published_results",
    "run_experiment",
    "run_matrix",
]

MANIFEST_NAME = "manifest.json"
MANIFEST_SCHEMA_VERSION = 1
REPORT_FORMATS = ("markdown", "csv")

# F-score and MCC of the fine-tuned transformer on the four public corpora,
# columns for levels 0/10/20/30.
_PUBLISHED = {
    "iSarcasm": ((0.3720, 0.3809, 0.4044, 0.3828), (0.2789, 0.2964, 0.3084, 0.2939)),
    "Ghosh": ((0.7964, 0.7830, 0.7758, 0.7835), (0.6438, 0.6284, 0.6193, 0.6294)),
    "Ptacek": ((0.8705, 0.8738, 0.8727, 0.8717), (0.7411, 0.7491, 0.7469, 0.7442)),
    "SemEval-18": ((0.6606, 0.6666, 0.6707, 0.6746), (0.4128, 0.4286, 0.4362, 0.4382)),
}
_PUBLISHED_LEVELS = (0, 10, 20, 30)


def level_header(level: float) -> str:
    """Report column title of a level ("Non-augmented", "20% augmented")."""
    level = normalize_level(level)
    return "Non-augmented" if level == 0 else f"{level}% augmented"


@dataclass
class ExperimentOutcome:
    """Everything one matrix run produced."""

    results: list[RunResult] = field(default_factory=list)
    failures: list[RunFailure] = field(default_factory=list)
    manifest_path: Path | None = None

    @property
    def partial(self) -> bool:
        """True when at least one cell failed."""
        return bool(self.failures)


@dataclass(frozen=True)
class _Cell:
    dataset: Dataset
    level: int | float
    seed: int
    n_train: int


class _CellError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(str(cause))
        self.stage = stage
        self.cause = cause


def _run_file(level: int | float, seed: int, multi_seed: bool) -> str:
    return f"{level}.seed{seed}.json" if multi_seed else f"{level}.json"


def _load_sources(
    plan: ExperimentPlan,
) -> tuple[list[Dataset], dict[str, tuple[str, str]]]:
    """Load and preprocess every dataset; failures are returned per name."""
    loaded: list[Dataset] = []
    failed: dict[str, tuple[str, str]] = {}
    for source in plan.datasets:
        stage = "load"
        try:
            d = load_dataset(source.path, source.format, name=source.name)
            stage = "preprocess"
            d, report = preprocess_dataset(d, plan.pipeline)
            if report.dropped:
                logger.info(
                    "%s: %d sample(s) empty after preprocessing", source.name, len(report.dropped)
                )
            loaded.append(d)
        except Exception as exc:
            logger.warning("Dataset %s failed at %s: %s", source.name, stage, exc)
            failed[source.name] = (stage, f"{type(exc).__name__}: {exc}")
    return loaded, failed


def _run_cell(
    cell: _Cell,
    table: EmbeddingTable,
    plan: ExperimentPlan,
    stopwords: frozenset[str],
    out_dir: Path,
) -> RunResult:
    started = time.perf_counter()
    d = cell.dataset
    stage = "augment"
    try:
        augment_report = None
        if cell.level > 0:
            policy = replace(
                plan.augment,
                increase_pct=float(cell.level),
                seed=derive_seed(cell.seed, d.name, cell.level),
            )
            d, augment_report = augment_class(d, table, policy, stopwords)
        stage = "train"
        cfg = plan.classifier or ClassifierConfig.for_dataset_size(cell.n_train)
        model = train(d.split(Split.TRAIN), cfg, table)
        stage = "evaluate"
        val = d.split(Split.VAL)
        if not val:
            raise ValidationError(
                f"Dataset {d.name!r} has no evaluation samples",
                parameter="dataset",
                value=d.name,
                expected="non-empty test split (used for evaluation)",
            )
        predictions = evaluate(model, val, table)
        metrics = metric_set(predictions, [s.label for s in val])
        stage = "persist"
        multi_seed = len(plan.run_seeds) > 1
        name = _run_file(cell.level, cell.seed, multi_seed)
        model_rel = f"models/{d.name}/{name}"
        save_model(model, out_dir / model_rel)
        result = RunResult(
            dataset=d.name,
            level=cell.level,
            seed=cell.seed,
            metrics=metrics,
            config_fingerprint=model.config_fingerprint,
            augment_report=augment_report,
            artifacts={"model": model_rel},
            duration_s=time.perf_counter() - started,
        )
        atomic_write_text(out_dir / f"runs/{d.name}/{name}", canonical_json(result.to_dict()))
    except Exception as exc:
        raise _CellError(stage, exc) from exc
    logger.info(
        "%s level %s seed %d: F=%.4f MCC=%.4f (%.2fs)",
        d.name,
        cell.level,
        cell.seed,
        metrics.f_score,
        metrics.mcc,
        result.duration_s,
    )
    return result


def _input_checksums(plan: ExperimentPlan) -> dict[str, Any]:
    def checksum(path: str) -> str | None:
        file_path = Path(path)
        return sha256_file(file_path) if file_path.is_file() else None

    return {
        "embeddings": checksum(plan.embeddings),
        "datasets": {source.name: checksum(source.path) for source in plan.datasets},
    }


def _plan_summary(plan: ExperimentPlan) -> dict[str, Any]:
    return {
        "datasets": [_source_summary(source) for source in plan.datasets],
        "levels": [normalize_level(level) for level in plan.levels],
        "seeds": list(plan.run_seeds),
        "pipeline": plan.pipeline.to_dict(),
        "augment": plan.augment.to_dict(),
        "classifier": None if plan.classifier is None else plan.classifier.to_dict(),
        "deltas": plan.deltas,
    }


def _source_summary(source: DatasetSource) -> dict[str, str]:
    return {"name": source.name, "format": source.format}


def run_matrix(plan: ExperimentPlan, workers: int | None = None) -> ExperimentOutcome:
    """
    Run every (dataset, level, seed) cell of ``plan`` and persist the results.

    Per dataset: load -> preprocess -> dedup (against every earlier dataset)
    -> merge_train_val; then per cell: augment the train split when level > 0
    -> train -> predict on the evaluation split -> metrics. A failing stage
    aborts only its cell, which is recorded in the outcome and the manifest.

    Args:
        plan: The experiment plan.
        workers: Concurrent cells (``plan.workers`` when None). Results and
            files do not depend on it.

    Returns:
        Results ordered by dataset (plan order), level (ascending), seed
        (plan order), plus the recorded failures.

    Raises:
        InputFileNotFoundError: If the embedding file is missing.
        ParseError: If the embedding file is malformed.
    """
    workers = workers or plan.workers
    out_dir = Path(plan.output_dir)
    table = load_embeddings(validate_file_exists(plan.embeddings), workers=workers)
    stopwords = resolve_stopwords(plan.pipeline)
    levels = sorted({normalize_level(level) for level in plan.levels})
    seeds = plan.run_seeds

    loaded, load_failures = _load_sources(plan)
    deduped, dedup_report = dedup(loaded)
    prepared = {d.name: merge_train_val(d) for d in deduped}

    outcome = ExperimentOutcome()
    cells: list[_Cell] = []
    for source in plan.datasets:
        for level in levels:
            for seed in seeds:
                if source.name in load_failures:
                    stage, error = load_failures[source.name]
                    outcome.failures.append(RunFailure(source.name, level, seed, stage, error))
                    continue
                d = prepared[source.name]
                cells.append(_Cell(d, level, seed, d.count(Split.TRAIN)))

    def run(cell: _Cell) -> RunResult | RunFailure:
        try:
            return _run_cell(cell, table, plan, stopwords, out_dir)
        except _CellError as exc:
            logger.warning(
                "Cell %s level %s seed %d failed at %s: %s",
                cell.dataset.name,
                cell.level,
                cell.seed,
                exc.stage,
                exc.cause,
            )
            logger.debug("Cell failure detail", exc_info=exc.cause)
            error = f"{type(exc.cause).__name__}: {exc.cause}"
            return RunFailure(cell.dataset.name, cell.level, cell.seed, exc.stage, error)

    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            finished = list(pool.map(run, cells))
    else:
        finished = [run(cell) for cell in cells]

    for item in finished:
        if isinstance(item, RunResult):
            outcome.results.append(item)
        else:
            outcome.failures.append(item)
    rank = {source.name: i for i, source in enumerate(plan.datasets)}
    outcome.failures.sort(key=lambda f: (rank[f.dataset], f.level, seeds.index(f.seed)))

    multi_seed = len(seeds) > 1
    manifest = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "plan": _plan_summary(plan),
        "inputs": _input_checksums(plan),
        "dedup": {"within": dedup_report.n_within, "across": dedup_report.n_across},
        "runs": [
            f"runs/{r.dataset}/{_run_file(r.level, r.seed, multi_seed)}"
            for r in outcome.results
        ],
        "failures": [f.to_dict() for f in outcome.failures],
    }
    outcome.manifest_path = atomic_write_text(out_dir / MANIFEST_NAME, canonical_json(manifest))
    logger.info(
        "Experiment finished: %d run(s), %d failure(s)",
        len(outcome.results),
        len(outcome.failures),
    )
    return outcome


def run_experiment(plan: ExperimentPlan, workers: int | None = None) -> list[RunResult]:
    """
    Run the full matrix and return the successful cells.

    See :func:`run_matrix` for the recorded failures.
    """
    return run_matrix(plan, workers).results


def load_results(path: str | Path) -> list[RunResult]:
    """
    Read the runs listed in a results directory's manifest, in manifest order.

    Raises:
        InputFileNotFoundError: If the manifest or a listed run is missing.
        ParseError: If a file is not valid JSON of the expected shape.
    """
    root = Path(path)
    manifest_path = validate_file_exists(root / MANIFEST_NAME)
    manifest = _read_json(manifest_path)
    results = []
    for rel in manifest.get("runs", []):
        run_path = validate_file_exists(root / rel)
        try:
            results.append(RunResult.from_dict(_read_json(run_path)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(
                f"Invalid run file: {exc}",
                raw_output=run_path.read_text(encoding="utf-8"),
                source=str(run_path),
            ) from exc
    return results


def _read_json(path: Path) -> dict[str, Any]:
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"Invalid JSON: {exc.msg}", raw_output=text, line_number=exc.lineno, source=str(path)
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError("Expected a JSON object", raw_output=text, source=str(path))
    return doc


def published_results() -> list[RunResult]:
    """
    Published F-score and MCC of the four public sarcasm corpora.

    Only ``f_score`` and ``mcc`` carry published values; confusion counts,
    precision and recall are zero placeholders.
    """
    results = []
    for name, (f_scores, mccs) in _PUBLISHED.items():
        for level, f, m in zip(_PUBLISHED_LEVELS, f_scores, mccs):
            metrics = MetricSet(precision=0.0, recall=0.0, f_score=f, mcc=m, cm=ConfusionMatrix())
            results.append(RunResult(name, level, 0, metrics, "published"))
    return results


def _grid(results: Iterable[RunResult]) -> OrderedDict[str, dict[int | float, list[RunResult]]]:
    grid: OrderedDict[str, dict[int | float, list[RunResult]]] = OrderedDict()
    for result in results:
        grid.setdefault(result.dataset, {}).setdefault(normalize_level(result.level), []).append(
            result
        )
    return grid


def _mean(runs: Sequence[RunResult], metric: str) -> float:
    values = [getattr(r.metrics, metric) for r in runs]
    return values[0] if len(values) == 1 else float(np.mean(values))


def _delta(runs: Sequence[RunResult], baseline: Sequence[RunResult], metric: str) -> float:
    if len(runs) == 1 and len(baseline) == 1:
        report = compare_runs(baseline[0].metrics, runs[0].metrics)
        return report.f_score_points if metric == "f_score" else report.mcc_points
    return point_change(_mean(baseline, metric), _mean(runs, metric))


def _tables(results: Sequence[RunResult], deltas: bool) -> list[tuple[str, pd.DataFrame]]:
    grid = _grid(results)
    levels = sorted({level for cells in grid.values() for level in cells})
    headers = [level_header(level) for level in levels]
    tables = []
    for title, metric in (("F-score", "f_score"), ("MCC", "mcc")):
        rows = [
            [name]
            + [
                format_fixed(_mean(cells[level], metric)) if level in cells else "n/a"
                for level in levels
            ]
            for name, cells in grid.items()
        ]
        tables.append((title, pd.DataFrame(rows, columns=["Dataset", *headers])))

    treated = [level for level in levels if level != 0]
    if deltas and 0 in levels and treated:
        rows = []
        for name, cells in grid.items():
            for title, metric in (("F-score", "f_score"), ("MCC", "mcc")):
                row = [name, title]
                for level in treated:
                    if 0 in cells and level in cells:
                        row.append(f"{_delta(cells[level], cells[0], metric):+.1f}")
                    else:
                        row.append("n/a")
                rows.append(row)
        columns = ["Dataset", "Metric", *(level_header(level) for level in treated)]
        tables.append(("Change vs. non-augmented (points)", pd.DataFrame(rows, columns=columns)))
    return tables


def _markdown(title: str, frame: pd.DataFrame) -> str:
    lines = [f"## {title}", ""]
    lines.append("| " + " | ".join(frame.columns) + " |")
    lines.append("|" + "|".join("---" for _ in frame.columns) + "|")
    for row in frame.itertuples(index=False):
        lines.append("| " + " | ".join(str(value) for value in row) + " |")
    return "\n".join(lines) + "\n"


def emit_report(
    results: Sequence[RunResult], format: str = "markdown", deltas: bool = True
) -> str:
    """
    Render F-score and MCC tables: one row per dataset, one column per level.

    Values have 4 decimals (half-up) and are seed means when a cell ran with
    several seeds. With ``deltas`` and a level-0 column, a third table lists
    point changes of every level against level 0.

    Args:
        results: Runs to report (dataset order follows first appearance).
        format: ``markdown`` or ``csv``.
        deltas: Append the change table.

    Example:
        >>> print(emit_report([r for r in published_results() if r.dataset == "iSarcasm"]))
        ## F-score
        <BLANKLINE>
        | Dataset | Non-augmented | 10% augmented | 20% augmented | 30% augmented |
        |---|---|---|---|---|
        | iSarcasm | 0.3720 | 0.3809 | 0.4044 | 0.3828 |
        ...

    Raises:
        ValidationError: If ``results`` is empty or the format is unknown.
    """
    if format not in REPORT_FORMATS:
        raise ValidationError(
            f"Unknown report format {format!r}",
            parameter="format",
            value=format,
            expected=" or ".join(REPORT_FORMATS),
        )
    if not results:
        raise ValidationError(
            "No results to report",
            parameter="results",
            value=0,
            expected="at least one RunResult",
        )
    tables = _tables(results, deltas)
    if format == "markdown":
        return "\n".join(_markdown(title, frame) for title, frame in tables)
    parts = []
    for title, frame in tables:
        frame = frame.copy()
        frame.insert(0, "Table", title)
        parts.append(frame.to_csv(index=False, lineterminator="\n"))
    return "\n".join(parts)
