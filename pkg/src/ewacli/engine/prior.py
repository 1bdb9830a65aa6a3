"""
The heavy-tailed sparsity prior: density proportional to
prod_i (tau^2 + beta_i^2)^-2, truncated to the l1 ball of radius c1.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from ewacli.exception import (
    InvalidSamplerConfigError,
    OutsideSupportError,
    RejectionBudgetExceededError,
)
from ewacli.engine.risk import as_coef

log = logging.getLogger(__name__)

DEFAULT_TAU = 1.0
DEFAULT_C1 = 1e6
REJECTION_BUDGET = 10**6
# bound on candidate entries materialised per rejection batch
_MAX_BATCH_ENTRIES = 2**21


@dataclass(frozen=True)
class PriorConfig:
    tau: float = DEFAULT_TAU
    c1: float = DEFAULT_C1

    def __post_init__(self):
        if not self.tau > 0:
            raise InvalidSamplerConfigError(f"prior tau must be positive, got {self.tau}")
        if not self.c1 > 0:
            raise InvalidSamplerConfigError(f"prior c1 must be positive, got {self.c1}")

    def check_dimension(self, d: int) -> bool:
        """
        Returns True when c1 > 2*d*tau, the constraint assumed by the risk bounds.
        Logs a warning otherwise; sampling still works.
        """
        if self.c1 > 2 * d * self.tau:
            return True
        log.warning(
            "prior radius c1=%g does not exceed 2*d*tau=%g (d=%d)",
            self.c1,
            2 * d * self.tau,
            d,
        )
        return False


def in_support(beta, cfg: PriorConfig) -> bool:
    return float(np.sum(np.abs(beta))) <= cfg.c1


def log_prior_unnormalized(beta, cfg: PriorConfig) -> float:
    coef = as_coef(beta)
    if not in_support(coef, cfg):
        return -np.inf
    return float(-2.0 * np.sum(np.log(cfg.tau**2 + coef**2)))


def grad_log_prior(beta, cfg: PriorConfig) -> np.ndarray:
    coef = as_coef(beta)
    if not in_support(coef, cfg):
        raise OutsideSupportError(l1_norm=float(np.sum(np.abs(coef))), c1=cfg.c1)
    return -4.0 * coef / (cfg.tau**2 + coef**2)


def sample_prior(
    cfg: PriorConfig,
    d: int,
    rng: np.random.Generator,
    max_attempts: int = REJECTION_BUDGET,
) -> np.ndarray:
    """
    Draws one vector from the truncated prior.

    Each component is tau * T / sqrt(3) with T Student-t with 3 degrees of
    freedom, which has exactly the density (tau^2 + b^2)^-2 up to a constant.
    Whole candidate vectors are rejected while their l1 norm exceeds c1.
    """
    if d < 1:
        raise InvalidSamplerConfigError(f"dimension must be at least 1, got {d}")
    cfg.check_dimension(d)
    scale = cfg.tau / np.sqrt(3.0)
    cap = max(1, _MAX_BATCH_ENTRIES // d)
    batch = 1
    attempts = 0
    while attempts < max_attempts:
        size = min(batch, cap, max_attempts - attempts)
        candidates = scale * rng.standard_t(3, size=(size, d))
        inside = np.flatnonzero(np.sum(np.abs(candidates), axis=1) <= cfg.c1)
        if inside.size:
            attempts += int(inside[0]) + 1
            log.debug("prior draw accepted after %d candidate vectors", attempts)
            return candidates[inside[0]].copy()
        attempts += size
        batch *= 2
    raise RejectionBudgetExceededError(
        attempts=attempts, c1=cfg.c1, tau=cfg.tau, d=d
    )
