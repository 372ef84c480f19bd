"""Confusion counts, the derived classification metrics, and learning curves.

The two curve procedures mirror the two diagnostics used for the models:
a sample-size sweep for the classical pipeline (refit at each size) and a
per-epoch repackaging of the neural training history.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import logreg, textprep, tfidf
from .errors import DataError, ShapeError

DEFAULT_CURVE_SIZES = (1000, 2000, 3000, 4000, 5000, 6000, 7000)

CURVE_CSV_HEADER = ("kind", "x", "train_accuracy", "validation_accuracy")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self):
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class CurvePoint:
    x: int
    train_accuracy: float
    validation_accuracy: float


@dataclass
class LearningCurve:
    kind: str
    points: list[CurvePoint]

    def validate(self):
        if self.kind not in ("by_sample_size", "by_epoch"):
            raise DataError(f"unknown curve kind {self.kind!r}")
        xs = [p.x for p in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DataError("curve x values must be strictly increasing")
        for p in self.points:
            for acc in (p.train_accuracy, p.validation_accuracy):
                if not 0.0 <= acc <= 1.0:
                    raise DataError(f"accuracy {acc} outside [0, 1]")
        return self


def confusion(preds, truth) -> ConfusionMatrix:
    """Count agreement cells with label 1 as the positive class."""
    preds = list(preds)
    truth = list(truth)
    if len(preds) != len(truth):
        raise ShapeError(f"{len(preds)} predictions vs {len(truth)} labels")
    if not preds:
        raise DataError("nothing to evaluate")
    seen = set(preds) | set(truth)
    if not seen <= {0, 1}:
        raise DataError(f"labels outside {{0, 1}}: {sorted(seen - {0, 1})}")
    p = np.asarray(preds)
    t = np.asarray(truth)
    return ConfusionMatrix(tp=int(((p == 1) & (t == 1)).sum()),
                           tn=int(((p == 0) & (t == 0)).sum()),
                           fp=int(((p == 1) & (t == 0)).sum()),
                           fn=int(((p == 0) & (t == 1)).sum()))


def report(cm: ConfusionMatrix) -> dict:
    """Accuracy, precision, recall and F1 from the confusion counts.

    Undefined ratios (zero denominator) are reported as 0.0 and named in
    degenerate_flags instead of raising, so sweeps over tiny training
    sizes survive all-one-class predictions.
    """
    if cm.total == 0:
        raise DataError("empty confusion matrix")
    flags = []
    accuracy = (cm.tp + cm.tn) / cm.total
    if cm.tp + cm.fp == 0:
        precision = 0.0
        flags.append("precision_degenerate")
    else:
        precision = cm.tp / (cm.tp + cm.fp)
    if cm.tp + cm.fn == 0:
        recall = 0.0
        flags.append("recall_degenerate")
    else:
        recall = cm.tp / (cm.tp + cm.fn)
    if precision + recall == 0.0:
        f1 = 0.0
        flags.append("f1_degenerate")
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return {"accuracy": accuracy, "precision": precision, "recall": recall,
            "f1": f1, "degenerate_flags": flags,
            "confusion": {"tp": cm.tp, "tn": cm.tn, "fp": cm.fp, "fn": cm.fn}}


def _fit_and_score(train_docs, train_labels, test_docs, test_labels):
    vec = tfidf.fit(train_docs)
    train_X = [tfidf.transform(d, vec) for d in train_docs]
    model = logreg.train(list(zip(train_X, train_labels)))
    train_preds = [logreg.predict(x, model) for x in train_X]
    test_preds = [logreg.predict(tfidf.transform(d, vec), model)
                  for d in test_docs]
    train_acc = float(np.mean(np.asarray(train_preds) == np.asarray(train_labels)))
    test_acc = float(np.mean(np.asarray(test_preds) == np.asarray(test_labels)))
    return train_acc, test_acc


def ml_learning_curve(corpus, sizes=DEFAULT_CURVE_SIZES, seed=0) -> LearningCurve:
    """Refit the TF-IDF + logistic pipeline at each training-set size.

    One seeded shuffle of the training split is drawn; size s uses its
    first s examples, so the subsets are nested. Train accuracy is scored
    on exactly those s examples, validation accuracy on the test split.
    """
    sizes = list(sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DataError("sizes must be strictly ascending")
    if not sizes:
        raise DataError("no sizes requested")
    if sizes[-1] > len(corpus.train):
        raise DataError(f"size {sizes[-1]} exceeds training split "
                        f"of {len(corpus.train)}")
    order = np.random.default_rng(seed).permutation(len(corpus.train))
    shuffled = [corpus.train[i] for i in order]
    test_docs = [textprep.tokenize(textprep.clean(t.text)) for t in corpus.test]
    test_labels = [t.label for t in corpus.test]
    points = []
    for s in sizes:
        subset = shuffled[:s]
        docs = [textprep.tokenize(textprep.clean(t.text)) for t in subset]
        labels = [t.label for t in subset]
        train_acc, val_acc = _fit_and_score(docs, labels, test_docs, test_labels)
        points.append(CurvePoint(x=s, train_accuracy=train_acc,
                                 validation_accuracy=val_acc))
    return LearningCurve(kind="by_sample_size", points=points).validate()


def dl_learning_curve(history) -> LearningCurve:
    """Repackage a per-epoch training history as a curve with x = epoch."""
    history = list(history)
    if not history:
        raise DataError("empty training history")
    points = [CurvePoint(x=h.epoch, train_accuracy=h.train_accuracy,
                         validation_accuracy=h.val_accuracy)
              for h in history]
    return LearningCurve(kind="by_epoch", points=points).validate()


def write_curve_csv(curve: LearningCurve, path):
    curve.validate()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_CSV_HEADER)
        for p in curve.points:
            writer.writerow([curve.kind, p.x,
                             f"{p.train_accuracy:.6f}",
                             f"{p.validation_accuracy:.6f}"])


def read_curve_csv(path) -> LearningCurve:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CURVE_CSV_HEADER:
        raise DataError(f"bad curve header in {path}")
    if len(rows) < 2:
        raise DataError(f"curve file {path} has no points")
    kinds = {r[0] for r in rows[1:]}
    if len(kinds) != 1:
        raise DataError(f"mixed curve kinds in {path}: {sorted(kinds)}")
    points = [CurvePoint(x=int(r[1]), train_accuracy=float(r[2]),
                         validation_accuracy=float(r[3]))
              for r in rows[1:]]
    return LearningCurve(kind=kinds.pop(), points=points).validate()
