"""Entropy-threshold classification: ROC/AUC, threshold fit, k-fold CV.

One scalar score per signal (its normalized persistent entropy), two
labels, and a single decision rule: score > threshold means faulty.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLabelsError, ParseError, StratificationError
from .jsonio import dumps, format_float

GOOD = "good"
FAULTY = "faulty"
LABELS = (GOOD, FAULTY)

_INF = float("inf")


@dataclass(frozen=True)
class LabeledScore:
    id: str
    score: float
    label: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")
        if not np.isfinite(self.score):
            raise ValueError(f"score for {self.id!r} is not finite")


@dataclass(frozen=True)
class RocCurve:
    """ROC points (threshold, FPR, TPR) with thresholds strictly decreasing,
    plus the trapezoidal AUC. Endpoints (0,0) and (1,1) are always present."""

    points: tuple[tuple[float, float, float], ...]
    auc: float

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("threshold,fpr,tpr\n")
        for thr, fpr, tpr in self.points:
            out.write(
                f"{format_float(thr)},{format_float(fpr)},{format_float(tpr)}\n"
            )
        return out.getvalue()


@dataclass(frozen=True)
class FoldResult:
    auc: float
    best_threshold: float
    accuracy: float


@dataclass(frozen=True)
class CvReport:
    """Stratified k-fold results. recommended_threshold is the full-data
    fit; per-fold thresholds (fit on the k-1 training folds) are kept
    alongside so both flavors stay visible."""

    k: int
    per_fold: tuple[FoldResult, ...]
    pooled_auc: float
    recommended_threshold: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "per_fold": [
                {
                    "auc": fr.auc,
                    "best_threshold": fr.best_threshold,
                    "accuracy": fr.accuracy,
                }
                for fr in self.per_fold
            ],
            "pooled_auc": self.pooled_auc,
            "recommended_threshold": self.recommended_threshold,
            "threshold_source": "full-data fit",
        }

    def to_json(self, indent: int = 0) -> str:
        return dumps(self.to_dict(), indent=indent)


def _split_by_label(scores, positive_label: str):
    if positive_label not in LABELS:
        raise ValueError(f"positive_label must be one of {LABELS}")
    pos = [s.score for s in scores if s.label == positive_label]
    neg = [s.score for s in scores if s.label != positive_label]
    if not pos or not neg:
        raise DegenerateLabelsError(
            "need at least one score of each label, got "
            f"{len(pos)} positive / {len(neg)} negative"
        )
    return np.asarray(pos), np.asarray(neg)


def roc_curve(scores, positive_label: str = FAULTY) -> RocCurve:
    """ROC of the rule `score > threshold => positive`.

    One point per distinct score plus the two trivial thresholds, so tied
    scores move diagonally and the trapezoidal AUC equals the
    Mann-Whitney statistic with ties counted half.
    """
    pos, neg = _split_by_label(scores, positive_label)
    thresholds = [_INF] + sorted(set(float(x) for x in np.concatenate([pos, neg])), reverse=True)
    thresholds.append(-_INF)
    points = []
    for thr in thresholds:
        tpr = float(np.count_nonzero(pos > thr)) / len(pos)
        fpr = float(np.count_nonzero(neg > thr)) / len(neg)
        points.append((float(thr), fpr, tpr))
    auc = 0.0
    for (_, f0, t0), (_, f1, t1) in zip(points, points[1:]):
        auc += (f1 - f0) * (t0 + t1) / 2.0
    return RocCurve(tuple(points), float(auc))


def mann_whitney_auc(scores, positive_label: str = FAULTY) -> float:
    """Pair-counting AUC: P(pos > neg) + 0.5 P(pos == neg)."""
    pos, neg = _split_by_label(scores, positive_label)
    wins = np.count_nonzero(pos[:, None] > neg[None, :])
    ties = np.count_nonzero(pos[:, None] == neg[None, :])
    return (wins + 0.5 * ties) / (len(pos) * len(neg))


def best_threshold(curve: RocCurve, scores) -> tuple[float, float]:
    """Accuracy-maximizing threshold for `score > theta => faulty`.

    Walks the curve's operating points (curve must have been built with
    positive_label=faulty). The returned theta sits at the midpoint of
    the winning gap between adjacent distinct scores; among equally
    accurate gaps the lowest one wins. Accuracy is recovered from
    FPR/TPR by exact integer counting so ties break deterministically.
    """
    distinct = sorted(set(s.score for s in scores))
    n_pos = sum(s.label == FAULTY for s in scores)
    n_neg = len(scores) - n_pos
    next_up = {a: b for a, b in zip(distinct, distinct[1:])}
    best_theta, best_correct = None, -1
    # ascending cut order: below every score, one cut per gap, then at the top
    for thr, fpr, tpr in reversed(curve.points):
        if thr == _INF:
            continue  # same partition as cutting at the top score
        correct = int(round(tpr * n_pos)) + n_neg - int(round(fpr * n_neg))
        if correct <= best_correct:
            continue
        if thr == -_INF:
            theta = distinct[0] - 1.0
        elif thr in next_up:
            theta = (thr + next_up[thr]) / 2.0
        else:
            theta = float(thr)
        best_theta, best_correct = theta, correct
    return float(best_theta), best_correct / len(scores)


def accuracy_at(scores, theta: float) -> float:
    values = np.asarray([s.score for s in scores])
    labels = np.asarray([s.label == FAULTY for s in scores])
    return float(np.count_nonzero((values > theta) == labels) / len(values))


def stratified_folds(scores, k: int, seed: int) -> list[list[int]]:
    """Deterministic stratified partition into k folds.

    Items are shuffled within each class and dealt round-robin across the
    class-concatenated order, so fold sizes differ by at most one overall
    and per class.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(scores):
        raise ValueError(f"k = {k} exceeds the dataset size {len(scores)}")
    rng = np.random.Generator(np.random.PCG64(seed))
    order: list[int] = []
    for label in LABELS:
        idx = [i for i, s in enumerate(scores) if s.label == label]
        perm = rng.permutation(len(idx))
        order.extend(idx[int(p)] for p in perm)
    folds: list[list[int]] = [[] for _ in range(k)]
    for pos, item in enumerate(order):
        folds[pos % k].append(item)
    return folds


def cross_validate(scores, k: int, seed: int) -> CvReport:
    """Stratified k-fold CV of the entropy threshold classifier.

    Each fold's threshold is fit on the other k-1 folds and scored on the
    held-out fold; pooled_auc ranks all held-out scores together.
    """
    scores = list(scores)
    _split_by_label(scores, FAULTY)  # both classes must be present
    folds = stratified_folds(scores, k, seed)
    for fi, fold in enumerate(folds):
        labels = {scores[i].label for i in fold}
        if labels != set(LABELS):
            missing = set(LABELS) - labels
            raise StratificationError(
                f"missing class {sorted(missing)}; use a smaller k", fold=fi
            )
    per_fold = []
    for fi, fold in enumerate(folds):
        held = [scores[i] for i in fold]
        train = [scores[i] for j, f in enumerate(folds) if j != fi for i in f]
        theta, _ = best_threshold(roc_curve(train), train)
        per_fold.append(
            FoldResult(
                auc=roc_curve(held).auc,
                best_threshold=theta,
                accuracy=accuracy_at(held, theta),
            )
        )
    pooled_auc = roc_curve(scores).auc
    recommended, _ = best_threshold(roc_curve(scores), scores)
    return CvReport(
        k=k,
        per_fold=tuple(per_fold),
        pooled_auc=pooled_auc,
        recommended_threshold=recommended,
    )


def load_scores(source) -> list[LabeledScore]:
    """Scores CSV: `id,score,label` with an optional header."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    out = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        cells = [c.strip() for c in row]
        if lineno == 1 and cells[1:2] == ["score"]:
            continue
        if len(cells) != 3:
            raise ParseError(f"expected 3 columns, got {len(cells)}", line=lineno)
        try:
            score = float(cells[1])
        except ValueError:
            raise ParseError(f"bad score {cells[1]!r}", line=lineno) from None
        try:
            out.append(LabeledScore(id=cells[0], score=score, label=cells[2]))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if not out:
        raise ParseError("no scores found", line=1)
    return out


def save_scores(scores, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("id,score,label\n")
        for s in scores:
            fh.write(f"{s.id},{format_float(s.score)},{s.label}\n")
