"""
sarcasm-augment - embedding-neighbor data augmentation for sarcasm corpora.

Grows the sarcastic class of a training split by replacing words with their
nearest GloVe neighbors, trains a seeded baseline classifier, and reports
F-score / MCC changes across augmentation levels.

Example usage:
    >>> from sarcasm_augment import load_dataset, load_embeddings, augment_class
    >>> from sarcasm_augment import AugmentPolicy, preprocess_dataset
    >>> ds, _ = preprocess_dataset(load_dataset("isarcasm.csv"))
    >>> table = load_embeddings("glove.twitter.27B.100d.txt")
    >>> augmented, report = augment_class(ds, table, AugmentPolicy(increase_pct=20))

Command line:
    $ sarcasm-augment experiment --plan plan.json
    $ sarcasm-augment report results/
"""

from sarcasm_augment.augment import augment_class, augment_sentence
from sarcasm_augment.classify import (
    TrainedModel,
    evaluate,
    export_for_external_trainer,
    featurize,
    predict,
    train,
)
from sarcasm_augment.corpus import (
    compute_stats,
    dedup,
    load_dataset,
    merge_train_val,
    split_random,
    write_dataset,
)
from sarcasm_augment.embeddings import (
    EmbeddingTable,
    Neighbor,
    cosine_similarity,
    load_embeddings,
    lookup,
    nearest_neighbors,
)
from sarcasm_augment.exceptions import (
    ConfigError,
    DimensionMismatchError,
    InputFileNotFoundError,
    ParseError,
    SarcasmAugmentError,
    ValidationError,
)
from sarcasm_augment.experiment import (
    emit_report,
    load_results,
    published_results,
    run_experiment,
    run_matrix,
)
from sarcasm_augment.metrics import compare_runs, confusion, f_score, mcc, metric_set
from sarcasm_augment.parsers.plan import load_plan
from sarcasm_augment.preprocess import (
    TextPipeline,
    clean,
    normalize,
    preprocess_dataset,
    trim,
)
from sarcasm_augment.types import (
    AugmentPolicy,
    AugmentReport,
    ClassifierConfig,
    ConfusionMatrix,
    Dataset,
    DatasetStats,
    DeltaReport,
    ExperimentPlan,
    Label,
    MetricSet,
    Origin,
    PipelineConfig,
    RunResult,
    Sample,
    Split,
)

__version__ = "0.3.0"

__all__ = [
    "AugmentPolicy",
    "AugmentReport",
    "ClassifierConfig",
    "ConfigError",
    "ConfusionMatrix",
    "Dataset",
    "DatasetStats",
    "DeltaReport",
    "DimensionMismatchError",
    "EmbeddingTable",
    "ExperimentPlan",
    "InputFileNotFoundError",
    "Label",
    "MetricSet",
    "Neighbor",
    "Origin",
    "ParseError",
    "PipelineConfig",
    "RunResult",
    "Sample",
    "SarcasmAugmentError",
    "Split",
    "TextPipeline",
    "TrainedModel",
    "ValidationError",
    "__version__",
    "augment_class",
    "augment_sentence",
    "clean",
    "compare_runs",
    "compute_stats",
    "confusion",
    "cosine_similarity",
    "dedup",
    "emit_report",
    "evaluate",
    "export_for_external_trainer",
    "f_score",
    "featurize",
    "load_dataset",
    "load_embeddings",
    "load_plan",
    "load_results",
    "lookup",
    "mcc",
    "merge_train_val",
    "metric_set",
    "nearest_neighbors",
    "normalize",
    "predict",
    "preprocess_dataset",
    "published_results",
    "run_experiment",
    "run_matrix",
    "split_random",
    "train",
    "trim",
    "write_dataset",
]
