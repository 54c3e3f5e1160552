"""Result type definitions for augmentation, evaluation and experiments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..exceptions import ValidationError

CELLS = ("tp", "tn", "fp", "fn")


@dataclass(frozen=True)
class ConfusionMatrix:
    """TP/TN/FP/FN counts with "sarcastic" as the positive class."""

    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        for name in CELLS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValidationError(
                    f"Confusion count {name} must be a non-negative integer",
                    parameter=name,
                    value=value,
                    expected="int >= 0",
                )

    @property
    def total(self) -> int:
        """Number of evaluated samples."""
        return self.tp + self.tn + self.fp + self.fn

    def swapped(self) -> ConfusionMatrix:
        """The same counts seen with the negative class as positive."""
        return ConfusionMatrix(tp=self.tn, tn=self.tp, fp=self.fn, fn=self.fp)

    def to_dict(self) -> dict[str, int]:
        """JSON-ready representation."""
        return {name: getattr(self, name) for name in CELLS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ConfusionMatrix:
        """Inverse of :meth:`to_dict`."""
        return cls(**{name: int(data[name]) for name in CELLS})


@dataclass(frozen=True)
class MetricSet:
    """
    Evaluation measures of one run.

    ``f_score`` is the positive-class F1 unless ``macro`` is set. The
    ``*_degenerate`` flags mark a zero denominator that was reported as 0.
    """

    precision: float
    recall: float
    f_score: float
    mcc: float
    cm: ConfusionMatrix
    macro: bool = False
    f_score_degenerate: bool = False
    mcc_degenerate: bool = False

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation with fixed key names."""
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f_score": self.f_score,
            "mcc": self.mcc,
            "confusion_matrix": self.cm.to_dict(),
            "macro": self.macro,
            "f_score_degenerate": self.f_score_degenerate,
            "mcc_degenerate": self.mcc_degenerate,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> MetricSet:
        """Inverse of :meth:`to_dict`."""
        return cls(
            precision=float(data["precision"]),
            recall=float(data["recall"]),
            f_score=float(data["f_score"]),
            mcc=float(data["mcc"]),
            cm=ConfusionMatrix.from_dict(data["confusion_matrix"]),
            macro=bool(data.get("macro", False)),
            f_score_degenerate=bool(data.get("f_score_degenerate", False)),
            mcc_degenerate=bool(data.get("mcc_degenerate", False)),
        )


@dataclass(frozen=True)
class DeltaReport:
    """
    Treated-minus-baseline differences.

    Attributes:
        f_score_points: Absolute F-score change in points (x100, 1 decimal).
        mcc_points: Absolute MCC change in points (x100, 1 decimal).
        relative_pct: Relative change per confusion cell in percent (2 decimals),
            None where the baseline cell is zero.
    """

    f_score_points: float
    mcc_points: float
    relative_pct: dict[str, float | None] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation; undefined relative deltas become "n/a"."""
        return {
            "f_score_points": self.f_score_points,
            "mcc_points": self.mcc_points,
            "relative_pct": {
                cell: ("n/a" if self.relative_pct.get(cell) is None else self.relative_pct[cell])
                for cell in CELLS
            },
        }


@dataclass(frozen=True)
class AugmentReport:
    """
    Accounting of one augmentation pass.

    ``requested - generated`` is the unmet count; ``rejected_duplicates`` and
    ``exhausted_sources`` explain it.
    """

    requested: int
    generated: int
    rejected_duplicates: int = 0
    exhausted_sources: int = 0
    attempts: int = 0

    @property
    def unmet(self) -> int:
        """Samples requested but not produced."""
        return self.requested - self.generated

    def to_dict(self) -> dict[str, int]:
        """JSON-ready representation."""
        return {
            "requested": self.requested,
            "generated": self.generated,
            "rejected_duplicates": self.rejected_duplicates,
            "exhausted_sources": self.exhausted_sources,
            "attempts": self.attempts,
            "unmet": self.unmet,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AugmentReport:
        """Inverse of :meth:`to_dict`."""
        return cls(
            requested=int(data["requested"]),
            generated=int(data["generated"]),
            rejected_duplicates=int(data.get("rejected_duplicates", 0)),
            exhausted_sources=int(data.get("exhausted_sources", 0)),
            attempts=int(data.get("attempts", 0)),
        )


@dataclass(frozen=True)
class RunResult:
    """
    One evaluated (dataset, level, seed) cell.

    ``duration_s`` is kept in memory only; persisted JSON leaves it out so
    results directories are reproducible byte for byte.
    """

    dataset: str
    level: float
    seed: int
    metrics: MetricSet
    config_fingerprint: str
    augment_report: AugmentReport | None = None
    artifacts: dict[str, str] = field(default_factory=dict)
    duration_s: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation (without wall-clock duration)."""
        return {
            "dataset": self.dataset,
            "level": self.level,
            "seed": self.seed,
            "metrics": self.metrics.to_dict(),
            "augment_report": (
                None if self.augment_report is None else self.augment_report.to_dict()
            ),
            "config_fingerprint": self.config_fingerprint,
            "artifacts": dict(sorted(self.artifacts.items())),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunResult:
        """Inverse of :meth:`to_dict`."""
        report = data.get("augment_report")
        return cls(
            dataset=str(data["dataset"]),
            level=data["level"],
            seed=int(data["seed"]),
            metrics=MetricSet.from_dict(data["metrics"]),
            config_fingerprint=str(data["config_fingerprint"]),
            augment_report=None if report is None else AugmentReport.from_dict(report),
            artifacts=dict(data.get("artifacts", {})),
        )


@dataclass(frozen=True)
class RunFailure:
    """A matrix cell that aborted, with the stage that failed."""

    dataset: str
    level: float
    seed: int
    stage: str
    error: str

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "dataset": self.dataset,
            "level": self.level,
            "seed": self.seed,
            "stage": self.stage,
            "error": self.error,
        }
