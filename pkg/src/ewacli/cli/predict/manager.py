from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd
from ewacli.engine.data_io import LABEL_COLUMN, load_csv, load_features_csv, write_labels_csv
from ewacli.engine.model_file import load_model

log = logging.getLogger(__name__)


class PredictManager:
    def predict(self, model_path: Path, data_path: Path, output: Path) -> dict:
        model = load_model(model_path)
        features, _ = load_features_csv(data_path, model.feature_names)
        labels = model.predict(features)
        write_labels_csv(labels, output)
        log.info("Wrote %d predictions to %s", labels.shape[0], output)

        summary = {
            "rows": int(labels.shape[0]),
            "predicted_positive": int(np.sum(labels == 1)),
            "predicted_negative": int(np.sum(labels == -1)),
            "output": str(output),
        }
        if self._has_labels(data_path):
            truth = load_csv(data_path)
            summary["misclassification_rate"] = float(np.mean(labels != truth.labels))
        return summary

    @staticmethod
    def _has_labels(data_path: Path) -> bool:
        header = pd.read_csv(data_path, nrows=0).columns
        return LABEL_COLUMN in [str(c).strip() for c in header]
