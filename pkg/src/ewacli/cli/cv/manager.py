from __future__ import annotations

import logging
from pathlib import Path
from typing import List

import numpy as np
from ewacli.engine.baselines import logistic_lasso_path
from ewacli.engine.data_io import load_csv, standardize
from ewacli.engine.estimators import lasso_report
from ewacli.engine.run_config import RunConfig

log = logging.getLogger(__name__)

NONZERO_THRESHOLD = 1e-8


class CvManager:
    def select(self, data_path: Path, cfg: RunConfig, workers: int = 1) -> List[dict]:
        """One row per penalty of the path, the selected penalty marked."""
        data = load_csv(data_path)
        if cfg.standardize:
            data, _ = standardize(data, data)
        report = lasso_report(data, cfg, np.random.SeedSequence(cfg.seed), workers)
        path = logistic_lasso_path(data, report.grid, cfg.lasso_config())
        if report.skipped_folds:
            log.warning("Folds skipped: %s", ", ".join(str(i) for i in report.skipped_folds))
        return [
            {
                "penalty": penalty,
                "mean_error": float(report.mean_error[i]),
                "sd_error": float(report.sd_error[i]),
                "nonzero": int(np.count_nonzero(np.abs(fit.beta) > NONZERO_THRESHOLD)),
                "selected": i == report.selected_index,
            }
            for i, (penalty, fit) in enumerate(zip(report.grid, path))
        ]
