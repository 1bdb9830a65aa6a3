from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from ewacli.engine.data_io import StandardizationStats
from ewacli.engine.run_config import RunConfig
from ewacli.exception import InvalidConfigurationError, ModelFileError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ModelFile:
    method: str
    coefficients: np.ndarray
    intercept: float
    feature_names: Tuple[str, ...]
    run_config: RunConfig
    standardization: Optional[StandardizationStats] = None
    chain_summary: Optional[dict] = None

    def decision(self, features: np.ndarray) -> np.ndarray:
        if self.standardization is not None:
            features = self.standardization.apply(features)
        return features @ self.coefficients + self.intercept

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.where(self.decision(features) >= 0.0, 1, -1)

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "method": self.method,
            "coefficients": self.coefficients.tolist(),
            "intercept": self.intercept,
            "feature_names": list(self.feature_names),
            "standardization": (
                self.standardization.to_dict() if self.standardization else None
            ),
            "run_config": self.run_config.to_dict(),
            "chain_summary": self.chain_summary,
        }


def save_model(model: ModelFile, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(model.to_dict(), indent=2) + "\n")
    return path


def load_model(path) -> ModelFile:
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except FileNotFoundError:
        raise ModelFileError(str(path), "file does not exist")
    except json.JSONDecodeError as err:
        raise ModelFileError(str(path), f"not valid JSON ({err.msg})")
    if not isinstance(document, dict):
        raise ModelFileError(str(path), "expected a JSON object")
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFileError(str(path), f"unsupported format version {version!r}")
    try:
        coefficients = np.asarray(document["coefficients"], dtype=np.float64)
        names = tuple(document["feature_names"])
        if len(names) != coefficients.shape[0]:
            raise ModelFileError(str(path), "feature names do not match coefficients")
        stats = document.get("standardization")
        return ModelFile(
            method=document["method"],
            coefficients=coefficients,
            intercept=float(document.get("intercept", 0.0)),
            feature_names=names,
            run_config=RunConfig.from_dict(document["run_config"]),
            standardization=StandardizationStats.from_dict(stats) if stats else None,
            chain_summary=document.get("chain_summary"),
        )
    except (KeyError, TypeError, ValueError, InvalidConfigurationError) as err:
        raise ModelFileError(str(path), f"malformed content ({err})")
