"""
Gibbs pseudo-posterior targets.

The target density is exp(-lambda * risk(beta)) * prior(beta), known up to a
constant. Samplers only ever see the ``LogDensityTarget`` protocol.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Protocol, Tuple

import numpy as np
from ewacli.engine.prior import (
    PriorConfig,
    grad_log_prior,
    in_support,
    log_prior_unnormalized,
)
from ewacli.engine.risk import LabeledDataset, as_coef, logistic_loss
from ewacli.exception import (
    InvalidSamplerConfigError,
    NonFiniteGradientError,
    OutsideSupportError,
)
from scipy.special import expit


class LossKind(Enum):
    HINGE = "hinge"
    LOGISTIC = "logistic"


class RiskScale(Enum):
    """
    MEAN multiplies the averaged empirical risk by lam; SUM multiplies the
    summed losses, so lam = 1 under SUM is lam = n under MEAN and gives the
    logistic loss its exact likelihood.
    """

    MEAN = "mean"
    SUM = "sum"


@dataclass(frozen=True)
class GibbsConfig:
    lam: float = 1.0
    loss: LossKind = LossKind.HINGE
    prior: PriorConfig = field(default_factory=PriorConfig)
    scale: RiskScale = RiskScale.MEAN

    def __post_init__(self):
        if not self.lam > 0:
            raise InvalidSamplerConfigError(
                f"inverse temperature must be positive, got {self.lam}"
            )
        if not isinstance(self.loss, LossKind):
            object.__setattr__(self, "loss", LossKind(self.loss))
        if not isinstance(self.scale, RiskScale):
            object.__setattr__(self, "scale", RiskScale(self.scale))


class LogDensityTarget(Protocol):
    dim: int

    def log_density(self, beta: np.ndarray) -> float:
        ...

    def gradient(self, beta: np.ndarray) -> np.ndarray:
        ...

    def value_and_grad(self, beta: np.ndarray) -> Tuple[float, np.ndarray]:
        ...


def _risk_and_grad(
    beta: np.ndarray, data: LabeledDataset, loss: LossKind
) -> Tuple[float, np.ndarray]:
    m = data.labels * (data.features @ beta)
    if loss is LossKind.HINGE:
        risk = np.sum(np.maximum(1.0 - m, 0.0)) / data.n
        # strict inequality: points sitting on the kink contribute nothing
        weights = (m < 1.0).astype(np.float64)
    else:
        risk = np.sum(logistic_loss(m)) / data.n
        weights = expit(-m)
    grad = -(data.features.T @ (weights * data.labels)) / data.n
    return float(risk), grad


class GibbsTarget:
    """Log pseudo-posterior for one dataset and one GibbsConfig."""

    def __init__(self, data: LabeledDataset, cfg: GibbsConfig):
        self.data = data
        self.cfg = cfg
        self.dim = data.d
        self.temperature = cfg.lam * (data.n if cfg.scale is RiskScale.SUM else 1)

    def risk(self, beta) -> float:
        return _risk_and_grad(as_coef(beta, self.dim), self.data, self.cfg.loss)[0]

    def log_density(self, beta) -> float:
        coef = as_coef(beta, self.dim)
        log_prior = log_prior_unnormalized(coef, self.cfg.prior)
        if not np.isfinite(log_prior):
            return -np.inf
        risk, _ = _risk_and_grad(coef, self.data, self.cfg.loss)
        return -self.temperature * risk + log_prior

    def gradient(self, beta) -> np.ndarray:
        return self.value_and_grad(beta)[1]

    def value_and_grad(self, beta) -> Tuple[float, np.ndarray]:
        coef = as_coef(beta, self.dim)
        if not in_support(coef, self.cfg.prior):
            raise OutsideSupportError(
                l1_norm=float(np.sum(np.abs(coef))), c1=self.cfg.prior.c1
            )
        risk, risk_grad = _risk_and_grad(coef, self.data, self.cfg.loss)
        value = -self.temperature * risk + log_prior_unnormalized(coef, self.cfg.prior)
        return value, -self.temperature * risk_grad + grad_log_prior(coef, self.cfg.prior)


class FunctionTarget:
    """Adapts a plain log-density and gradient pair to the target protocol."""

    def __init__(
        self,
        dim: int,
        log_density: Callable[[np.ndarray], float],
        gradient: Callable[[np.ndarray], np.ndarray],
    ):
        self.dim = dim
        self._log_density = log_density
        self._gradient = gradient

    def log_density(self, beta) -> float:
        return float(self._log_density(as_coef(beta, self.dim)))

    def gradient(self, beta) -> np.ndarray:
        return np.asarray(self._gradient(as_coef(beta, self.dim)), dtype=np.float64)

    def value_and_grad(self, beta) -> Tuple[float, np.ndarray]:
        value = self.log_density(beta)
        if not np.isfinite(value):
            raise NonFiniteGradientError(where="point of zero target density")
        return value, self.gradient(beta)


def prior_target(cfg: PriorConfig, dim: int) -> FunctionTarget:
    return FunctionTarget(
        dim,
        lambda beta: log_prior_unnormalized(beta, cfg),
        lambda beta: grad_log_prior(beta, cfg),
    )


def log_target(beta, data: LabeledDataset, cfg: GibbsConfig) -> float:
    return GibbsTarget(data, cfg).log_density(beta)


def grad_log_target(beta, data: LabeledDataset, cfg: GibbsConfig) -> np.ndarray:
    return GibbsTarget(data, cfg).gradient(beta)
