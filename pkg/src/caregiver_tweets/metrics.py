"""Confusion counts, per-class and macro precision/recall/F1, and report output.

Class 1 (author has a family member with dementia) is the positive class.
Zero denominators give a metric of 0 and set ``degenerate`` on that class.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import asdict, dataclass

from .errors import EmptyEvaluationError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0
    excluded: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def coverage(self) -> float:
        seen = self.total + self.excluded
        return self.total / seen if seen else 0.0

    def swapped(self) -> "ConfusionMatrix":
        """Same counts with class 0 treated as positive."""
        return ConfusionMatrix(tp=self.tn, fp=self.fn, fn=self.fp, tn=self.tp, excluded=self.excluded)

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(
            self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn, self.excluded + other.excluded
        )


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    degenerate: bool = False


@dataclass(frozen=True)
class MacroMetrics:
    positive: ClassMetrics
    negative: ClassMetrics
    macro_f1: float

    @property
    def per_class(self) -> dict[int, ClassMetrics]:
        return {1: self.positive, 0: self.negative}


def f1_score(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def tally(gold: int, predicted: int) -> ConfusionMatrix:
    if gold == 1:
        return ConfusionMatrix(tp=1) if predicted == 1 else ConfusionMatrix(fn=1)
    return ConfusionMatrix(fp=1) if predicted == 1 else ConfusionMatrix(tn=1)


def confusion(predictions: Iterable) -> ConfusionMatrix:
    """Tally scored predictions; ones flagged ``excluded`` only count toward coverage."""
    tp = fp = fn = tn = excluded = 0
    for p in predictions:
        if getattr(p, "excluded", False) or p.predicted is None:
            excluded += 1
            continue
        if p.gold == 1:
            if p.predicted == 1:
                tp += 1
            else:
                fn += 1
        elif p.predicted == 1:
            fp += 1
        else:
            tn += 1
    cm = ConfusionMatrix(tp, fp, fn, tn, excluded)
    if cm.total == 0:
        raise EmptyEvaluationError(f"no scorable predictions ({excluded} excluded)")
    return cm


def class_metrics(cm: ConfusionMatrix) -> ClassMetrics:
    degenerate = False
    if cm.tp + cm.fp:
        precision = cm.tp / (cm.tp + cm.fp)
    else:
        precision, degenerate = 0.0, True
    if cm.tp + cm.fn:
        recall = cm.tp / (cm.tp + cm.fn)
    else:
        recall, degenerate = 0.0, True
    return ClassMetrics(precision, recall, f1_score(precision, recall), degenerate)


def evaluate(cm: ConfusionMatrix) -> MacroMetrics:
    if cm.total <= 0:
        raise EmptyEvaluationError("confusion matrix is empty")
    pos = class_metrics(cm)
    neg = class_metrics(cm.swapped())
    return MacroMetrics(pos, neg, (pos.f1 + neg.f1) / 2)


def report_dict(cm: ConfusionMatrix, m: MacroMetrics | None = None) -> dict:
    m = m or evaluate(cm)
    return {
        "counts": asdict(cm),
        "scored": cm.total,
        "coverage": cm.coverage,
        "class_1": asdict(m.positive),
        "class_0": asdict(m.negative),
        "macro_f1": m.macro_f1,
    }


def format_report(cm: ConfusionMatrix, m: MacroMetrics | None = None) -> str:
    m = m or evaluate(cm)
    lines = [
        f"{'class':<8}{'precision':>11}{'recall':>9}{'f1':>8}",
    ]
    for label, cls in ((1, m.positive), (0, m.negative)):
        flag = "  (degenerate)" if cls.degenerate else ""
        lines.append(f"{label:<8}{cls.precision:>11.4f}{cls.recall:>9.4f}{cls.f1:>8.4f}{flag}")
    lines += [
        f"macro F1: {m.macro_f1:.4f}",
        f"counts: tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}",
        f"coverage: {cm.coverage:.2%} ({cm.total} scored, {cm.excluded} excluded)",
    ]
    return "\n".join(lines)
