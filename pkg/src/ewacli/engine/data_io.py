"""
CSV ingestion and emission, train-only standardisation and random splits.

Dataset files have a header row and a label column named ``y`` holding
-1/+1 or 0/1; every other column is a numeric feature.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from ewacli.engine.risk import LabeledDataset
from ewacli.exception import (
    DegenerateSplitError,
    EmptyDatasetError,
    InvalidDatasetError,
    MissingLabelColumnError,
    MixedLabelAlphabetError,
    NonNumericCellError,
)

log = logging.getLogger(__name__)

LABEL_COLUMN = "y"
FLOAT_FORMAT = "%.17g"


def _read_raw(path: Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except FileNotFoundError:
        raise InvalidDatasetError(f"file {path} does not exist")
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError(str(path))
    if frame.shape[0] == 0:
        raise EmptyDatasetError(str(path))
    frame.columns = [str(c).strip() for c in frame.columns]
    return frame


def _numeric(frame: pd.DataFrame, columns: Sequence[str]) -> np.ndarray:
    raw = frame[list(columns)]
    values = raw.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    array = values.to_numpy(dtype=np.float64)
    bad = ~np.isfinite(array)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NonNumericCellError(
            row=int(row) + 1, column=columns[col], value=raw.iat[row, col]
        )
    return array


def _labels(frame: pd.DataFrame, label_column: str) -> np.ndarray:
    raw = _numeric(frame, [label_column]).reshape(-1)
    seen = set(np.unique(raw).tolist())
    if seen <= {-1.0, 1.0}:
        return raw
    if seen <= {0.0, 1.0}:
        return np.where(raw == 0.0, -1.0, 1.0)
    raise MixedLabelAlphabetError(list(seen))


def load_csv(path, label_column: str = LABEL_COLUMN) -> LabeledDataset:
    path = Path(path)
    frame = _read_raw(path)
    if label_column not in frame.columns:
        raise MissingLabelColumnError(str(path), label_column)
    names = [c for c in frame.columns if c != label_column]
    if not names:
        raise InvalidDatasetError(f"file {path} has no feature columns")
    features = _numeric(frame, names)
    labels = _labels(frame, label_column)
    log.info("Loaded %s: %d rows, %d features", path, features.shape[0], len(names))
    return LabeledDataset(features, labels, feature_names=tuple(names))


def load_features_csv(
    path, feature_names: Optional[Sequence[str]] = None, label_column: str = LABEL_COLUMN
) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """
    Reads a feature matrix, ignoring a label column if present. When
    feature_names are given, columns are selected and ordered to match them.
    """
    path = Path(path)
    frame = _read_raw(path)
    available = [c for c in frame.columns if c != label_column]
    if feature_names is None:
        names = available
    else:
        missing = [name for name in feature_names if name not in frame.columns]
        if missing:
            raise InvalidDatasetError(
                f"file {path} lacks feature columns {', '.join(missing[:5])}"
            )
        names = list(feature_names)
    features = _numeric(frame, names)
    log.info("Loaded %s: %d rows, %d features", path, features.shape[0], len(names))
    return features, tuple(names)


def write_csv(data: LabeledDataset, path, label_column: str = LABEL_COLUMN) -> Path:
    path = Path(path)
    frame = pd.DataFrame(data.features, columns=list(data.feature_names))
    frame.insert(0, label_column, data.labels.astype(int))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_labels_csv(labels: np.ndarray, path, label_column: str = LABEL_COLUMN) -> Path:
    path = Path(path)
    pd.DataFrame({label_column: np.asarray(labels, dtype=int)}).to_csv(
        path, index=False, lineterminator="\n"
    )
    return path


@dataclass(frozen=True)
class StandardizationStats:
    mean: np.ndarray
    sd: np.ndarray
    constant: np.ndarray

    @property
    def scale(self) -> np.ndarray:
        return np.where(self.constant, 1.0, self.sd)

    def apply(self, features: np.ndarray) -> np.ndarray:
        features = np.asarray(features, dtype=np.float64)
        if features.shape[-1] != self.mean.shape[0]:
            raise InvalidDatasetError(
                f"standardisation fitted on {self.mean.shape[0]} features, got {features.shape[-1]}"
            )
        return (features - self.mean) / self.scale

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "sd": self.sd.tolist(),
            "constant": self.constant.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> StandardizationStats:
        return cls(
            mean=np.asarray(data["mean"], dtype=np.float64),
            sd=np.asarray(data["sd"], dtype=np.float64),
            constant=np.asarray(data["constant"], dtype=bool),
        )


def fit_standardization(train: LabeledDataset) -> StandardizationStats:
    """Per-feature mean and sample standard deviation (divisor n - 1)."""
    if train.n == 0:
        raise EmptyDatasetError("training set")
    mean = train.features.mean(axis=0)
    if train.n > 1:
        sd = train.features.std(axis=0, ddof=1)
    else:
        sd = np.zeros(train.d)
    constant = ~(sd > 0)
    if constant.any():
        log.info("%d constant features are centred but not scaled", int(constant.sum()))
    return StandardizationStats(mean=mean, sd=sd, constant=constant)


def standardize(
    train: LabeledDataset, apply_to: LabeledDataset
) -> Tuple[LabeledDataset, StandardizationStats]:
    stats = fit_standardization(train)
    return apply_to.with_features(stats.apply(apply_to.features)), stats


def split_indices(n: int, train_fraction: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    if not 0 < train_fraction < 1:
        raise DegenerateSplitError(n, int(np.floor(train_fraction * n + 0.5)))
    train_size = int(np.floor(train_fraction * n + 0.5))
    if train_size < 1 or train_size > n - 1:
        raise DegenerateSplitError(n, train_size)
    order = rng.permutation(n)
    return np.sort(order[:train_size]), np.sort(order[train_size:])


def split(
    data: LabeledDataset, train_fraction: float, rng: np.random.Generator
) -> Tuple[LabeledDataset, LabeledDataset]:
    train_rows, test_rows = split_indices(data.n, train_fraction, rng)
    return data.subset(train_rows), data.subset(test_rows)
