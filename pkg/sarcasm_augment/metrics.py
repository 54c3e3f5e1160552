"""
Confusion matrices, F-score, MCC and run-to-run deltas.

Zero denominators give a score of 0 and set the matching ``*_degenerate``
flag on :class:`MetricSet` instead of raising.
"""

from __future__ import annotations

import logging
from decimal import Decimal, localcontext
from typing import TYPE_CHECKING

import pandas as pd

from .exceptions import ValidationError
from .types.corpus import Label
from .types.results import CELLS, ConfusionMatrix, DeltaReport, MetricSet
from .utils import round_half_up

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

logger = logging.getLogger(__name__)

__all__ = [
    "compare_runs",
    "confusion",
    "deltas_to_csv",
    "f_score",
    "f_score_is_degenerate",
    "macro_f_score",
    "mcc",
    "mcc_is_degenerate",
    "metric_set",
    "metrics_to_csv",
    "point_change",
    "precision",
    "recall",
]


def _as_label(value: Label | str) -> Label:
    return value if isinstance(value, Label) else Label.parse(value)


def confusion(
    predictions: Sequence[Label | str],
    gold: Sequence[Label | str],
    positive: Label | str = Label.POSITIVE,
) -> ConfusionMatrix:
    """
    Tally predictions against gold labels.

    Args:
        predictions: Predicted labels.
        gold: True labels, same length.
        positive: Class counted as positive (sarcastic by default).

    Raises:
        ValidationError: If the lists differ in length or are empty.

    Example:
        >>> confusion(["sarcastic"] * 3, ["not_sarcastic"] * 3)
        ConfusionMatrix(tp=0, tn=0, fp=3, fn=0)
    """
    if len(predictions) != len(gold):
        raise ValidationError(
            f"predictions and gold differ in length ({len(predictions)} vs {len(gold)})",
            parameter="predictions",
            value=len(predictions),
            expected=f"length {len(gold)}",
        )
    if not gold:
        raise ValidationError(
            "Cannot build a confusion matrix from empty lists",
            parameter="gold",
            value=0,
            expected="at least one label",
        )
    pos = _as_label(positive)
    tp = tn = fp = fn = 0
    for predicted, truth in zip(predictions, gold):
        p_pos = _as_label(predicted) is pos
        g_pos = _as_label(truth) is pos
        if p_pos and g_pos:
            tp += 1
        elif p_pos:
            fp += 1
        elif g_pos:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn)


def precision(cm: ConfusionMatrix) -> float:
    """``tp / (tp + fp)``, 0 when nothing was predicted positive."""
    denominator = cm.tp + cm.fp
    return cm.tp / denominator if denominator else 0.0


def recall(cm: ConfusionMatrix) -> float:
    """``tp / (tp + fn)``, 0 when there are no positives."""
    denominator = cm.tp + cm.fn
    return cm.tp / denominator if denominator else 0.0


def f_score_is_degenerate(cm: ConfusionMatrix) -> bool:
    """True when ``2tp + fp + fn`` is 0."""
    return 2 * cm.tp + cm.fp + cm.fn == 0


def f_score(cm: ConfusionMatrix) -> float:
    """
    Positive-class F1: ``2tp / (2tp + fp + fn)``.

    Returns 0 when the denominator is 0 (see :func:`f_score_is_degenerate`).

    Example:
        >>> round(f_score(ConfusionMatrix(tp=2, fp=1, fn=1)), 4)
        0.6667
    """
    denominator = 2 * cm.tp + cm.fp + cm.fn
    return 2 * cm.tp / denominator if denominator else 0.0


def macro_f_score(cm: ConfusionMatrix) -> float:
    """Unweighted mean of the F1 of both classes."""
    return (f_score(cm) + f_score(cm.swapped())) / 2


def mcc_is_degenerate(cm: ConfusionMatrix) -> bool:
    """True when any marginal of the matrix is 0."""
    return 0 in (cm.tp + cm.fp, cm.tp + cm.fn, cm.tn + cm.fp, cm.tn + cm.fn)


def mcc(cm: ConfusionMatrix) -> float:
    """
    Matthews correlation coefficient.

    ``(tp*tn - fp*fn) / sqrt((tp+fp)(tp+fn)(tn+fp)(tn+fn))`` with the products
    in exact integers and the square root in 40-digit decimal arithmetic.
    Returns 0 when any factor is 0 (see :func:`mcc_is_degenerate`).

    Example:
        >>> round(mcc(ConfusionMatrix(tp=3, tn=4, fp=1, fn=2)), 4)
        0.4082
    """
    if mcc_is_degenerate(cm):
        return 0.0
    numerator = cm.tp * cm.tn - cm.fp * cm.fn
    product = (cm.tp + cm.fp) * (cm.tp + cm.fn) * (cm.tn + cm.fp) * (cm.tn + cm.fn)
    with localcontext() as ctx:
        ctx.prec = 40
        value = Decimal(numerator) / Decimal(product).sqrt()
    return float(value)


def metric_set(
    predictions: Sequence[Label | str],
    gold: Sequence[Label | str],
    macro: bool = False,
) -> MetricSet:
    """
    All evaluation measures for one prediction run.

    Args:
        predictions: Predicted labels.
        gold: True labels.
        macro: Report macro-F1 instead of positive-class F1. The F-score is
            then flagged degenerate when either class's F1 is.
    """
    cm = confusion(predictions, gold)
    return MetricSet(
        precision=precision(cm),
        recall=recall(cm),
        f_score=macro_f_score(cm) if macro else f_score(cm),
        mcc=mcc(cm),
        cm=cm,
        macro=macro,
        f_score_degenerate=(
            f_score_is_degenerate(cm) or (macro and f_score_is_degenerate(cm.swapped()))
        ),
        mcc_degenerate=mcc_is_degenerate(cm),
    )


def point_change(baseline: float, treated: float) -> float:
    """
    Absolute change in points (x100, 1 decimal, half-up).

    Example:
        >>> point_change(0.3720, 0.4044)
        3.2
    """
    delta = (Decimal(str(treated)) - Decimal(str(baseline))) * 100
    return float(round_half_up(delta, 1))


def compare_runs(baseline: MetricSet, treated: MetricSet) -> DeltaReport:
    """
    Differences between a baseline and a treated run.

    F-score and MCC changes are absolute, in points (x100, 1 decimal,
    half-up). Confusion cells change relatively,
    ``(treated - baseline) / baseline * 100`` to 2 decimals, and are None
    ("n/a" once serialized) where the baseline cell is 0.

    Example:
        >>> compare_runs(run_with_f(0.3720), run_with_f(0.4044)).f_score_points
        3.2
    """
    relative: dict[str, float | None] = {}
    for cell in CELLS:
        base = getattr(baseline.cm, cell)
        new = getattr(treated.cm, cell)
        if base == 0:
            relative[cell] = None
        else:
            relative[cell] = float(round_half_up(Decimal(new - base) * 100 / Decimal(base), 2))
    return DeltaReport(
        f_score_points=point_change(baseline.f_score, treated.f_score),
        mcc_points=point_change(baseline.mcc, treated.mcc),
        relative_pct=relative,
    )


def metrics_to_csv(named: Mapping[str, MetricSet]) -> str:
    """One CSV row per named MetricSet (precision, recall, F, MCC, cells)."""
    rows = [
        {
            "name": name,
            "precision": m.precision,
            "recall": m.recall,
            "f_score": m.f_score,
            "mcc": m.mcc,
            **m.cm.to_dict(),
        }
        for name, m in named.items()
    ]
    columns = ["name", "precision", "recall", "f_score", "mcc", *CELLS]
    return pd.DataFrame(rows, columns=columns).to_csv(index=False, lineterminator="\n")


def deltas_to_csv(named: Mapping[str, DeltaReport]) -> str:
    """One CSV row per named DeltaReport; undefined cells read "n/a"."""
    rows = []
    for name, delta in named.items():
        data = delta.to_dict()
        rows.append(
            {
                "name": name,
                "f_score_points": data["f_score_points"],
                "mcc_points": data["mcc_points"],
                **{f"{cell}_pct": data["relative_pct"][cell] for cell in CELLS},
            }
        )
    columns = ["name", "f_score_points", "mcc_points", *(f"{c}_pct" for c in CELLS)]
    return pd.DataFrame(rows, columns=columns).to_csv(index=False, lineterminator="\n")
