"""Type definitions shared across the pipeline."""

from __future__ import annotations

from .config import (
    AugmentPolicy,
    ClassifierConfig,
    DatasetSource,
    ExperimentPlan,
    PipelineConfig,
)
from .corpus import (
    Dataset,
    DatasetStats,
    DedupReport,
    DroppedSample,
    DropReport,
    Label,
    Origin,
    Sample,
    Split,
)
from .results import (
    AugmentReport,
    ConfusionMatrix,
    DeltaReport,
    MetricSet,
    RunFailure,
    RunResult,
)

__all__ = [
    "AugmentPolicy",
    "AugmentReport",
    "ClassifierConfig",
    "ConfusionMatrix",
    "Dataset",
    "DatasetSource",
    "DatasetStats",
    "DedupReport",
    "DeltaReport",
    "DropReport",
    "DroppedSample",
    "ExperimentPlan",
    "Label",
    "MetricSet",
    "Origin",
    "PipelineConfig",
    "RunFailure",
    "RunResult",
    "Sample",
    "Split",
]
