from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
from ewacli.engine.data_io import fit_standardization, load_csv
from ewacli.engine.estimators import fit_method
from ewacli.engine.model_file import ModelFile, save_model
from ewacli.engine.risk import risk_report
from ewacli.engine.run_config import RunConfig

log = logging.getLogger(__name__)


class FitManager:
    def fit(self, data_path: Path, output: Path, cfg: RunConfig) -> dict:
        data = load_csv(data_path)
        stats = None
        train = data
        if cfg.standardize:
            stats = fit_standardization(data)
            train = data.with_features(stats.apply(data.features))

        method = cfg.method_kind
        log.info("Fitting %s on %d rows, %d features", method.value, train.n, train.d)
        fitted = fit_method(
            method, train, cfg, np.random.SeedSequence(cfg.seed)
        )
        model = ModelFile(
            method=method.value,
            coefficients=fitted.beta,
            intercept=fitted.intercept,
            feature_names=data.feature_names,
            run_config=cfg.replace(data_path=str(data_path), output_path=str(output)),
            standardization=stats,
            chain_summary=fitted.chain_summary,
        )
        save_model(model, output)

        risks = risk_report(fitted.beta, train)
        summary = {
            "method": method.value,
            "rows": data.n,
            "features": data.d,
            "nonzero_coefficients": int(np.count_nonzero(np.abs(fitted.beta) > 1e-8)),
            "training_error": fitted.misclassification(train),
            "hinge_risk": risks.hinge,
            "logistic_risk": risks.logistic,
            "model": str(output),
        }
        if fitted.penalty is not None:
            summary["penalty"] = fitted.penalty
        if fitted.chain_summary:
            summary["acceptance_rate"] = fitted.chain_summary["acceptance_rate"]
            summary["step_size"] = fitted.chain_summary["final_step_size"]
        return summary
