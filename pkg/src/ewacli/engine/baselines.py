"""
l1-penalised logistic regression fitted by accelerated proximal gradient
(FISTA with backtracking and a monotone momentum restart), its warm-started
penalty path and K-fold cross-validated penalty selection.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from ewacli.engine.risk import LabeledDataset, as_coef, logistic_loss
from ewacli.exception import (
    AllFoldsDegenerateError,
    InvalidDatasetError,
    InvalidSamplerConfigError,
    NonFiniteObjectiveError,
)
from scipy.special import expit

log = logging.getLogger(__name__)

DEFAULT_N_PENALTIES = 50
DEFAULT_PENALTY_RATIO = 1e-4


class CvMeasure(Enum):
    MISCLASSIFICATION = "misclassification"
    # twice the mean negative log-likelihood of the held-out labels
    DEVIANCE = "deviance"


@dataclass(frozen=True)
class LassoConfig:
    penalty_grid: Optional[Tuple[float, ...]] = None
    max_iter: int = 5000
    tol: float = 1e-8
    folds: int = 10
    intercept: bool = False
    n_penalties: int = DEFAULT_N_PENALTIES
    penalty_ratio: float = DEFAULT_PENALTY_RATIO
    measure: CvMeasure = CvMeasure.MISCLASSIFICATION

    def __post_init__(self):
        if not isinstance(self.measure, CvMeasure):
            try:
                object.__setattr__(self, "measure", CvMeasure(self.measure))
            except ValueError:
                raise InvalidSamplerConfigError(
                    f"unknown cross-validation measure {self.measure!r}; "
                    "choose from misclassification, deviance"
                )
        if self.penalty_grid is not None:
            grid = tuple(float(p) for p in self.penalty_grid)
            if not grid or any(p <= 0 for p in grid):
                raise InvalidSamplerConfigError("penalty grid must be non-empty and positive")
            if any(a <= b for a, b in zip(grid, grid[1:])):
                raise InvalidSamplerConfigError("penalty grid must be strictly descending")
            object.__setattr__(self, "penalty_grid", grid)
        if self.folds < 2:
            raise InvalidSamplerConfigError(f"need at least 2 folds, got {self.folds}")
        if self.max_iter < 1 or not self.tol > 0:
            raise InvalidSamplerConfigError("max_iter must be positive and tol > 0")


@dataclass(frozen=True)
class LassoFit:
    penalty: float
    beta: np.ndarray
    intercept: float
    iterations: int
    objective_trace: Tuple[float, ...]

    def decision(self, features: np.ndarray) -> np.ndarray:
        return features @ self.beta + self.intercept

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.where(self.decision(features) >= 0.0, 1, -1)


@dataclass(frozen=True)
class CvReport:
    penalty: float
    beta: np.ndarray
    intercept: float
    grid: Tuple[float, ...]
    mean_error: np.ndarray
    sd_error: np.ndarray
    skipped_folds: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def selected_index(self) -> int:
        return self.grid.index(self.penalty)


def soft_threshold(z, t):
    """sign(z) * max(|z| - t, 0), elementwise for arrays."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("threshold must be non-negative")
    result = np.sign(z) * np.maximum(np.abs(z) - t, 0.0)
    return float(result) if np.ndim(result) == 0 else result


def lambda_max(data: LabeledDataset, intercept: bool = False) -> float:
    """Smallest penalty at which the all-zero coefficient vector is optimal."""
    positives = (data.labels + 1.0) / 2.0
    centre = positives.mean() if intercept else 0.5
    return float(np.max(np.abs(data.features.T @ (positives - centre))) / data.n)


def default_penalty_grid(
    data: LabeledDataset,
    n_penalties: int = DEFAULT_N_PENALTIES,
    ratio: float = DEFAULT_PENALTY_RATIO,
    intercept: bool = False,
) -> Tuple[float, ...]:
    top = lambda_max(data, intercept)
    if top <= 0:
        # labels orthogonal to every feature; any positive grid gives zero
        top = 1.0
    return tuple(np.geomspace(top, top * ratio, n_penalties).tolist())


class _Problem:
    def __init__(self, data: LabeledDataset, penalty: float, intercept: bool):
        self.data = data
        self.penalty = penalty
        self.intercept = intercept
        self.d = data.d

    def split(self, w: np.ndarray) -> Tuple[np.ndarray, float]:
        if self.intercept:
            return w[:-1], float(w[-1])
        return w, 0.0

    def smooth(self, w: np.ndarray) -> Tuple[float, np.ndarray]:
        beta, b = self.split(w)
        m = self.data.labels * (self.data.features @ beta + b)
        value = float(np.sum(logistic_loss(m)) / self.data.n)
        residual = expit(-m) * self.data.labels
        grad = -(self.data.features.T @ residual) / self.data.n
        if self.intercept:
            grad = np.append(grad, -np.sum(residual) / self.data.n)
        return value, grad

    def smooth_value(self, w: np.ndarray) -> float:
        beta, b = self.split(w)
        m = self.data.labels * (self.data.features @ beta + b)
        return float(np.sum(logistic_loss(m)) / self.data.n)

    def penalty_value(self, w: np.ndarray) -> float:
        return self.penalty * float(np.sum(np.abs(w[: self.d])))

    def prox(self, w: np.ndarray, step: float) -> np.ndarray:
        out = w.copy()
        out[: self.d] = soft_threshold(w[: self.d], self.penalty * step)
        return out

    def objective(self, w: np.ndarray) -> float:
        return self.smooth_value(w) + self.penalty_value(w)


def _backtracking_step(problem: _Problem, z: np.ndarray, lipschitz: float):
    f_z, g_z = problem.smooth(z)
    while True:
        candidate = problem.prox(z - g_z / lipschitz, 1.0 / lipschitz)
        delta = candidate - z
        bound = f_z + g_z @ delta + 0.5 * lipschitz * (delta @ delta)
        if problem.smooth_value(candidate) <= bound + 1e-15 * abs(bound):
            return candidate, lipschitz
        lipschitz *= 2.0
        if not np.isfinite(lipschitz):
            return candidate, lipschitz


def _fista(problem: _Problem, start: np.ndarray, cfg: LassoConfig) -> Tuple[np.ndarray, int, List[float]]:
    x = start.copy()
    f_x = problem.objective(x)
    if not np.isfinite(f_x):
        raise NonFiniteObjectiveError(0)
    z = x.copy()
    t = 1.0
    lipschitz = 1.0
    trace = [f_x]
    iteration = 0
    for iteration in range(1, cfg.max_iter + 1):
        x_new, lipschitz = _backtracking_step(problem, z, lipschitz)
        f_new = problem.objective(x_new)
        if not np.isfinite(f_new):
            raise NonFiniteObjectiveError(iteration)
        if f_new > f_x:
            # momentum overshot: restart from the last accepted iterate
            t = 1.0
            x_new, lipschitz = _backtracking_step(problem, x, lipschitz)
            f_new = problem.objective(x_new)
            if f_new > f_x:
                break
        t_new = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        z = x_new + ((t - 1.0) / t_new) * (x_new - x)
        decrease = (f_x - f_new) / max(abs(f_x), np.finfo(float).tiny)
        x, f_x, t = x_new, f_new, t_new
        trace.append(f_x)
        # relax the Lipschitz estimate
        lipschitz = max(lipschitz / 2.0, 1e-12)
        if decrease < cfg.tol:
            break
    return x, iteration, trace


def _fit(
    data: LabeledDataset,
    penalty: float,
    cfg: LassoConfig,
    start: Optional[np.ndarray] = None,
) -> LassoFit:
    if not penalty > 0:
        raise InvalidSamplerConfigError(f"penalty must be positive, got {penalty}")
    problem = _Problem(data, penalty, cfg.intercept)
    width = data.d + (1 if cfg.intercept else 0)
    w0 = np.zeros(width) if start is None else start
    w, iterations, trace = _fista(problem, w0, cfg)
    beta, b = problem.split(w)
    return LassoFit(
        penalty=penalty,
        beta=beta.copy(),
        intercept=b,
        iterations=iterations,
        objective_trace=tuple(trace),
    )


def logistic_lasso_fit(data: LabeledDataset, penalty: float, cfg: LassoConfig = LassoConfig()) -> np.ndarray:
    return logistic_lasso_fit_full(data, penalty, cfg).beta


def logistic_lasso_fit_full(
    data: LabeledDataset, penalty: float, cfg: LassoConfig = LassoConfig(), init=None
) -> LassoFit:
    start = None
    if init is not None:
        start = as_coef(init, data.d + (1 if cfg.intercept else 0)).copy()
    return _fit(data, penalty, cfg, start)


def logistic_lasso_path(
    data: LabeledDataset, grid: Sequence[float], cfg: LassoConfig = LassoConfig()
) -> List[LassoFit]:
    """Fits every penalty of a descending grid, warm-starting each from the last."""
    fits = []
    start = None
    for penalty in grid:
        fit = _fit(data, penalty, cfg, start)
        fits.append(fit)
        start = fit.beta if not cfg.intercept else np.append(fit.beta, fit.intercept)
    return fits


def _held_out_error(fit: LassoFit, held_out: LabeledDataset, measure: CvMeasure) -> float:
    if measure is CvMeasure.DEVIANCE:
        return 2.0 * float(np.mean(logistic_loss(held_out.labels * fit.decision(held_out.features))))
    return float(np.mean(fit.predict(held_out.features) != held_out.labels))


def _fold_errors(
    data: LabeledDataset, validation: np.ndarray, grid: Sequence[float], cfg: LassoConfig
) -> Optional[np.ndarray]:
    train_rows = np.setdiff1d(np.arange(data.n), validation)
    train = data.subset(train_rows)
    if np.unique(train.labels).size < 2:
        return None
    held_out = data.subset(validation)
    return np.array(
        [_held_out_error(fit, held_out, cfg.measure) for fit in logistic_lasso_path(train, grid, cfg)]
    )


def cv_select(
    data: LabeledDataset,
    cfg: LassoConfig = LassoConfig(),
    rng: Optional[np.random.Generator] = None,
    workers: int = 1,
) -> CvReport:
    if data.n < cfg.folds:
        raise InvalidDatasetError(
            f"cross-validation needs at least {cfg.folds} rows, got {data.n}"
        )
    rng = rng if rng is not None else np.random.default_rng(0)
    grid = cfg.penalty_grid or default_penalty_grid(
        data, cfg.n_penalties, cfg.penalty_ratio, cfg.intercept
    )
    folds = np.array_split(rng.permutation(data.n), cfg.folds)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(lambda f: _fold_errors(data, f, grid, cfg), folds))
    else:
        errors = [_fold_errors(data, fold, grid, cfg) for fold in folds]

    skipped = tuple(i for i, e in enumerate(errors) if e is None)
    for i in skipped:
        log.warning("cross-validation fold %d has a single-class training part, skipped", i)
    scored = np.array([e for e in errors if e is not None])
    if scored.size == 0:
        raise AllFoldsDegenerateError(cfg.folds)

    mean_error = scored.mean(axis=0)
    sd_error = scored.std(axis=0, ddof=1) if scored.shape[0] > 1 else np.zeros(len(grid))
    # first minimum on a descending grid favours the larger penalty
    best = int(np.argmin(mean_error))
    refit = logistic_lasso_path(data, grid[: best + 1], cfg)[-1]
    log.info(
        "cross-validation selected penalty %.4g (index %d, mean error %.4f)",
        grid[best],
        best,
        mean_error[best],
    )
    return CvReport(
        penalty=grid[best],
        beta=refit.beta,
        intercept=refit.intercept,
        grid=tuple(grid),
        mean_error=mean_error,
        sd_error=sd_error,
        skipped_folds=skipped,
    )
