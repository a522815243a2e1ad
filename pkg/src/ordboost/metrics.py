"""Evaluation metrics and the constant-prediction baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, Model
from .errors import Empty, LengthMismatch


@dataclass(frozen=True)
class MetricsReport:
    mae: float
    mse: float
    r2: float | None  # None when the targets have zero variance
    n: int

    def to_dict(self) -> dict:
        return {"mae": self.mae, "mse": self.mse, "r2": self.r2, "n": self.n}


def _as_pair(y_true, y_pred) -> tuple[np.ndarray, np.ndarray]:
    yt = np.asarray(y_true, dtype=np.float64)
    yp = np.asarray(y_pred, dtype=np.float64)
    if yt.shape != yp.shape:
        raise LengthMismatch(f"shapes {yt.shape} vs {yp.shape}")
    if yt.size == 0:
        raise Empty("no values to score")
    return yt, yp


def mae(y_true, y_pred) -> float:
    yt, yp = _as_pair(y_true, y_pred)
    return float(np.mean(np.abs(yt - yp)))


def mse(y_true, y_pred) -> float:
    yt, yp = _as_pair(y_true, y_pred)
    return float(np.mean((yt - yp) ** 2))


def r2(y_true, y_pred) -> float | None:
    """Coefficient of determination about the evaluated set's own mean;
    None (not NaN) when the true targets are constant."""
    yt, yp = _as_pair(y_true, y_pred)
    ss_tot = float(np.sum((yt - np.mean(yt)) ** 2))
    if ss_tot == 0.0:
        return None
    ss_res = float(np.sum((yt - yp) ** 2))
    return 1.0 - ss_res / ss_tot


def report(y_true, y_pred) -> MetricsReport:
    yt, yp = _as_pair(y_true, y_pred)
    return MetricsReport(mae=mae(yt, yp), mse=mse(yt, yp), r2=r2(yt, yp), n=int(yt.size))


def evaluate(model: Model, dataset: Dataset) -> MetricsReport:
    from .boost import predict_batch  # local import: metrics stays below boost

    return report(dataset.targets(), predict_batch(model, dataset))


def naive_baseline(train: Dataset) -> Model:
    """Constant predictor: the mean training target, no constraint terms."""
    return Model(float(np.mean(train.targets())))
