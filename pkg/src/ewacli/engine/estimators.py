"""
Fits one of the benchmark methods to a training set and returns a linear
classifier. Each method draws randomness only from the seed sequence it is
handed, so results do not depend on which other methods run alongside it.
"""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from ewacli.engine.baselines import CvReport, cv_select
from ewacli.engine.gibbs import GibbsTarget
from ewacli.engine.risk import LabeledDataset
from ewacli.engine.run_config import InitKind, Method, RunConfig
from ewacli.engine.samplers import (
    default_lmc_step_size,
    lmc_run,
    mala_run,
    posterior_mean,
    sample_classifier,
    tune_step_size,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FittedClassifier:
    method: Method
    beta: np.ndarray
    intercept: float = 0.0
    penalty: Optional[float] = None
    chain_summary: Optional[dict] = None

    def decision(self, features: np.ndarray) -> np.ndarray:
        return np.asarray(features, dtype=np.float64) @ self.beta + self.intercept

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.where(self.decision(features) >= 0.0, 1, -1)

    def misclassification(self, test: LabeledDataset) -> float:
        return float(np.mean(self.predict(test.features) != test.labels))


def child(sequence: np.random.SeedSequence, index: int) -> np.random.SeedSequence:
    """The index-th child stream of a sequence, without mutating its spawn counter."""
    return np.random.SeedSequence(sequence.entropy, spawn_key=tuple(sequence.spawn_key) + (index,))


def seed_from(sequence: np.random.SeedSequence) -> int:
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def lasso_report(
    data: LabeledDataset, cfg: RunConfig, sequence: np.random.SeedSequence, workers: int = 1
) -> CvReport:
    return cv_select(data, cfg.lasso_config(), np.random.default_rng(sequence), workers)


def _initial_point(
    method: Method,
    data: LabeledDataset,
    cfg: RunConfig,
    lasso_sequence: np.random.SeedSequence,
    lasso: Optional[CvReport],
) -> np.ndarray:
    kind = InitKind(cfg.init)
    if kind is InitKind.AUTO:
        kind = InitKind.LASSO if method.sampler == "lmc" else InitKind.ZERO
    if kind is InitKind.ZERO:
        return np.zeros(data.d)
    if lasso is None:
        lasso = lasso_report(data, cfg, lasso_sequence)
    return lasso.beta.copy()


def fit_method(
    method: Method,
    data: LabeledDataset,
    cfg: RunConfig,
    sequence: np.random.SeedSequence,
    lasso: Optional[CvReport] = None,
    mala_step_size: Optional[float] = None,
    workers: int = 1,
) -> FittedClassifier:
    """
    ``lasso`` reuses an already cross-validated Lasso fit on the same data.
    ``mala_step_size`` is the adapted step of a MALA chain on the same target;
    an LMC chain without an explicit step size runs at a tenth of it, tuning
    one first when none is given.
    """
    lasso_sequence, sampler_sequence, draw_sequence = (child(sequence, i) for i in range(3))
    if method is Method.LASSO:
        report = lasso or lasso_report(data, cfg, lasso_sequence, workers)
        return FittedClassifier(method, report.beta, report.intercept, report.penalty)

    cfg.prior_config().check_dimension(data.d)
    target = GibbsTarget(data, cfg.gibbs_config(method.loss))
    sampler_cfg = cfg.sampler_config(seed=seed_from(sampler_sequence))
    init = _initial_point(method, data, cfg, lasso_sequence, lasso)

    if method.sampler == "lmc":
        if sampler_cfg.step_size is None:
            if mala_step_size is None:
                mala_step_size = tune_step_size(target, init, sampler_cfg)
            sampler_cfg = dataclasses.replace(
                sampler_cfg, step_size=default_lmc_step_size(data.d, mala_step_size)
            )
        chain = lmc_run(target, init, sampler_cfg)
    else:
        chain = mala_run(target, init, sampler_cfg)

    if cfg.stochastic:
        beta = sample_classifier(chain, np.random.default_rng(draw_sequence))
    else:
        beta = posterior_mean(chain)
    summary = chain.summary()
    log.info(
        "%s chain finished: acceptance %.3f, step size %.3g",
        method.value,
        summary["acceptance_rate"],
        summary["final_step_size"],
    )
    return FittedClassifier(method, beta, chain_summary=summary)
