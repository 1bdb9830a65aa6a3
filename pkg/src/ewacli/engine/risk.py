"""
Data types of the classification problem, the three empirical risks, the
linear classifier and its holdout evaluation.

Labels are always coded as -1/+1. A margin of a point is ``y * beta^T x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from ewacli.exception import (
    DimensionMismatchError,
    EmptyDatasetError,
    InvalidDatasetError,
)


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class LabeledDataset:
    features: np.ndarray
    labels: np.ndarray
    feature_names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64, ndmin=2)
        labels = np.array(self.labels, dtype=np.float64).reshape(-1)
        if features.shape[0] < 1 or features.shape[1] < 1:
            raise InvalidDatasetError(
                f"need n >= 1 and d >= 1, got shape {features.shape}"
            )
        if labels.shape[0] != features.shape[0]:
            raise InvalidDatasetError(
                f"{labels.shape[0]} labels for {features.shape[0]} feature rows"
            )
        if not np.all(np.isfinite(features)):
            raise InvalidDatasetError("features contain non-finite values")
        if not np.all((labels == 1.0) | (labels == -1.0)):
            raise InvalidDatasetError("every label must be -1 or +1")
        names = self.feature_names
        if names is None:
            names = tuple(f"x{j + 1}" for j in range(features.shape[1]))
        elif len(names) != features.shape[1]:
            raise InvalidDatasetError(
                f"{len(names)} feature names for {features.shape[1]} columns"
            )
        object.__setattr__(self, "features", _freeze(features))
        object.__setattr__(self, "labels", _freeze(labels))
        object.__setattr__(self, "feature_names", tuple(names))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    def subset(self, rows: Sequence[int]) -> LabeledDataset:
        rows = np.asarray(rows, dtype=np.intp)
        if rows.size == 0:
            raise EmptyDatasetError("subset")
        return LabeledDataset(
            self.features[rows], self.labels[rows], feature_names=self.feature_names
        )

    def with_features(self, features: np.ndarray) -> LabeledDataset:
        return LabeledDataset(features, self.labels, feature_names=self.feature_names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledDataset):
            return NotImplemented
        return np.array_equal(self.features, other.features) and np.array_equal(
            self.labels, other.labels
        )

    __hash__ = None  # type: ignore


def as_coef(beta, d: Optional[int] = None) -> np.ndarray:
    """Validates a coefficient vector (CoefVector) and returns it as a float array."""
    coef = np.asarray(beta, dtype=np.float64).reshape(-1)
    if d is not None and coef.shape[0] != d:
        raise DimensionMismatchError(expected=d, actual=coef.shape[0])
    if not np.all(np.isfinite(coef)):
        raise InvalidDatasetError("coefficient vector contains non-finite values")
    return coef


@dataclass(frozen=True)
class RiskReport:
    zero_one: float
    hinge: float
    logistic: float


def margins(beta, data: LabeledDataset) -> np.ndarray:
    coef = as_coef(beta, data.d)
    return data.labels * (data.features @ coef)


def logistic_loss(margin: np.ndarray) -> np.ndarray:
    """log(1 + exp(-m)), evaluated without overflow."""
    margin = np.asarray(margin, dtype=np.float64)
    return np.maximum(-margin, 0.0) + np.log1p(np.exp(-np.abs(margin)))


def zero_one_risk(beta, data: LabeledDataset) -> float:
    m = margins(beta, data)
    # zero margins count as correctly classified
    return float(np.sum(m < 0.0) / data.n)


def hinge_risk(beta, data: LabeledDataset) -> float:
    m = margins(beta, data)
    return float(np.sum(np.maximum(1.0 - m, 0.0)) / data.n)


def logistic_risk(beta, data: LabeledDataset) -> float:
    m = margins(beta, data)
    return float(np.sum(logistic_loss(m)) / data.n)


def risk_report(beta, data: LabeledDataset) -> RiskReport:
    m = margins(beta, data)
    return RiskReport(
        zero_one=float(np.sum(m < 0.0) / data.n),
        hinge=float(np.sum(np.maximum(1.0 - m, 0.0)) / data.n),
        logistic=float(np.sum(logistic_loss(m)) / data.n),
    )


def predict(beta, x) -> int:
    coef = as_coef(beta)
    point = np.asarray(x, dtype=np.float64).reshape(-1)
    if point.shape[0] != coef.shape[0]:
        raise DimensionMismatchError(
            expected=coef.shape[0], actual=point.shape[0], what="feature vector"
        )
    return 1 if float(coef @ point) >= 0.0 else -1


def predict_many(beta, features: np.ndarray) -> np.ndarray:
    """Vectorised ``predict``; ties at zero resolve to +1."""
    features = np.asarray(features, dtype=np.float64)
    coef = as_coef(beta, features.shape[1])
    return np.where(features @ coef >= 0.0, 1, -1)


def misclassification_rate(beta, test: LabeledDataset) -> float:
    if test.n == 0:
        raise EmptyDatasetError("test set")
    predicted = predict_many(beta, test.features)
    return float(np.sum(predicted != test.labels) / test.n)
