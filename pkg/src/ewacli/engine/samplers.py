"""
Langevin samplers over a ``LogDensityTarget``.

``lmc_run`` is the unadjusted discretisation of the Langevin diffusion,
``mala_run`` adds a Metropolis-Hastings correction with the Gaussian
transition density of the same proposal. Both ascend the log-density.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from ewacli.engine.gibbs import LogDensityTarget
from ewacli.engine.risk import as_coef
from ewacli.exception import (
    DataError,
    EmptyChainError,
    InvalidSamplerConfigError,
    NonFiniteGradientError,
    NumericalError,
)

log = logging.getLogger(__name__)

DEFAULT_N_ITER = 30000
DEFAULT_BURN_IN = 5000
DEFAULT_MALA_STEP_SIZE = 1e-3
LMC_STEP_FRACTION = 0.1
ADAPT_WINDOW = 100
ADAPT_UP = 1.1
ADAPT_DOWN = 0.9
ADAPT_BAND = 0.05
MAX_ROLLBACKS = 30
STEP_SEARCH_PROPOSALS = 10
STEP_SEARCH_LIMIT = 30


@dataclass(frozen=True)
class SamplerConfig:
    step_size: Optional[float] = None
    n_iter: int = DEFAULT_N_ITER
    burn_in: int = DEFAULT_BURN_IN
    adapt: bool = True
    target_acceptance: float = 0.5
    thin: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.step_size is not None and not self.step_size > 0:
            raise InvalidSamplerConfigError(
                f"step size must be positive, got {self.step_size}"
            )
        if self.n_iter < 1:
            raise InvalidSamplerConfigError(f"n_iter must be positive, got {self.n_iter}")
        if not 0 <= self.burn_in < self.n_iter:
            raise InvalidSamplerConfigError(
                f"burn_in must lie in [0, n_iter), got {self.burn_in} for n_iter={self.n_iter}"
            )
        if not 0 < self.target_acceptance < 1:
            raise InvalidSamplerConfigError(
                f"target acceptance must lie in (0, 1), got {self.target_acceptance}"
            )
        if self.thin < 1:
            raise InvalidSamplerConfigError(f"thin must be at least 1, got {self.thin}")


@dataclass(frozen=True)
class Chain:
    samples: np.ndarray
    burn_in: int
    acceptance_rate: float
    step_size_trace: np.ndarray
    seed: int
    rollbacks: int = 0
    method: str = "mala"

    @property
    def kept(self) -> np.ndarray:
        return self.samples[self.burn_in :]

    def summary(self) -> dict:
        return {
            "method": self.method,
            "acceptance_rate": float(self.acceptance_rate),
            "final_step_size": float(self.step_size_trace[-1]),
            "kept_draws": int(self.samples.shape[0] - self.burn_in),
            "rollbacks": int(self.rollbacks),
            "seed": int(self.seed),
        }


def default_lmc_step_size(d: int, mala_step_size: Optional[float] = None) -> float:
    if mala_step_size is not None:
        return LMC_STEP_FRACTION * mala_step_size
    return 1e-5 / d


def _evaluate(target: LogDensityTarget, beta: np.ndarray):
    """Returns (value, gradient), or None where the target has zero density."""
    if not np.all(np.isfinite(beta)):
        return None
    try:
        value, grad = target.value_and_grad(beta)
    except (NumericalError, DataError):
        return None
    if not np.isfinite(value) or not np.all(np.isfinite(grad)):
        return None
    return value, grad


def _start(target: LogDensityTarget, init) -> Tuple[np.ndarray, float, np.ndarray]:
    beta = as_coef(init, target.dim).copy()
    value, grad = target.value_and_grad(beta)
    if not np.isfinite(value) or not np.all(np.isfinite(grad)):
        raise NonFiniteGradientError()
    return beta, value, grad


def _stored_rows(cfg: SamplerConfig) -> Tuple[int, int]:
    total = -(-cfg.n_iter // cfg.thin)
    burn = -(-cfg.burn_in // cfg.thin)
    return total, burn


def lmc_run(target: LogDensityTarget, init, cfg: SamplerConfig) -> Chain:
    beta, _, grad = _start(target, init)
    h = cfg.step_size or default_lmc_step_size(target.dim)
    rng = np.random.default_rng(cfg.seed)
    total, burn = _stored_rows(cfg)
    samples = np.empty((total, target.dim))
    trace = np.empty(cfg.n_iter)
    rollbacks = 0
    for i in range(cfg.n_iter):
        noise = rng.standard_normal(target.dim)
        step = h
        for _ in range(MAX_ROLLBACKS + 1):
            proposal = beta + step * grad + np.sqrt(2.0 * step) * noise
            evaluated = _evaluate(target, proposal)
            if evaluated is not None:
                beta, grad = proposal, evaluated[1]
                break
            rollbacks += 1
            step *= 0.5
        else:
            log.debug("lmc step %d left the support %d times, staying put", i, MAX_ROLLBACKS + 1)
        trace[i] = step
        if i % cfg.thin == 0:
            samples[i // cfg.thin] = beta
    if rollbacks:
        log.debug("lmc chain rolled back %d steps", rollbacks)
    return Chain(
        samples=samples,
        burn_in=burn,
        acceptance_rate=1.0,
        step_size_trace=trace,
        seed=cfg.seed,
        rollbacks=rollbacks,
        method="lmc",
    )


def _log_q(to: np.ndarray, frm: np.ndarray, grad_frm: np.ndarray, h: float) -> float:
    diff = to - frm - h * grad_frm
    return float(-(diff @ diff) / (4.0 * h))


def _log_ratio(
    current: np.ndarray,
    value: float,
    grad: np.ndarray,
    proposal: np.ndarray,
    value_p: float,
    grad_p: np.ndarray,
    h: float,
) -> float:
    log_ratio = (
        value_p
        + _log_q(current, proposal, grad_p, h)
        - value
        - _log_q(proposal, current, grad, h)
    )
    return min(0.0, log_ratio)


def mala_log_acceptance(target: LogDensityTarget, current, proposal, h: float) -> float:
    """Log of the MALA acceptance probability of moving from current to proposal."""
    current = as_coef(current, target.dim)
    proposal = as_coef(proposal, target.dim)
    evaluated = _evaluate(target, proposal)
    if evaluated is None:
        return -np.inf
    value, grad = target.value_and_grad(current)
    return _log_ratio(current, value, grad, proposal, evaluated[0], evaluated[1], h)


def _mean_acceptance(target, beta, value, grad, h: float, noise: np.ndarray) -> float:
    total = 0.0
    for e in noise:
        proposal = beta + h * grad + np.sqrt(2.0 * h) * e
        evaluated = _evaluate(target, proposal)
        if evaluated is not None:
            total += np.exp(_log_ratio(beta, value, grad, proposal, *evaluated, h))
    return total / len(noise)


def initial_step_size(
    target: LogDensityTarget,
    init,
    rng: np.random.Generator,
    target_acceptance: float = 0.5,
) -> float:
    """
    Doubles or halves h, starting from the default, until the mean acceptance
    probability of a few proposals from ``init`` crosses the target. The
    windowed adaptation of the burn-in refines the result.
    """
    beta, value, grad = _start(target, init)
    noise = rng.standard_normal((STEP_SEARCH_PROPOSALS, target.dim))
    h = DEFAULT_MALA_STEP_SIZE
    grow = _mean_acceptance(target, beta, value, grad, h, noise) > target_acceptance
    for _ in range(STEP_SEARCH_LIMIT):
        candidate = 2.0 * h if grow else 0.5 * h
        rate = _mean_acceptance(target, beta, value, grad, candidate, noise)
        if grow and rate < target_acceptance:
            break
        h = candidate
        if not grow and rate >= target_acceptance:
            break
    log.debug("initial mala step size %.3g", h)
    return h


def _mala(target: LogDensityTarget, init, cfg: SamplerConfig, burn_in_only: bool):
    beta, value, grad = _start(target, init)
    rng = np.random.default_rng(cfg.seed)
    h = cfg.step_size
    if h is None:
        searching = cfg.adapt and cfg.burn_in > 0
        h = initial_step_size(target, beta, rng, cfg.target_acceptance) if searching else DEFAULT_MALA_STEP_SIZE
    n_iter = cfg.burn_in if burn_in_only else cfg.n_iter
    total, burn = _stored_rows(cfg)
    samples = None if burn_in_only else np.empty((total, target.dim))
    trace = np.empty(n_iter)
    window_accepts = 0
    accepted = 0
    for i in range(n_iter):
        noise = rng.standard_normal(target.dim)
        proposal = beta + h * grad + np.sqrt(2.0 * h) * noise
        u = rng.random()
        evaluated = _evaluate(target, proposal)
        took = False
        if evaluated is not None:
            log_alpha = _log_ratio(beta, value, grad, proposal, *evaluated, h)
            if u < np.exp(log_alpha):
                beta, (value, grad) = proposal, evaluated
                took = True
        trace[i] = h
        if i < cfg.burn_in:
            window_accepts += took
            if cfg.adapt and (i + 1) % ADAPT_WINDOW == 0:
                rate = window_accepts / ADAPT_WINDOW
                if rate > cfg.target_acceptance + ADAPT_BAND:
                    h *= ADAPT_UP
                elif rate < cfg.target_acceptance - ADAPT_BAND:
                    h *= ADAPT_DOWN
                log.debug("mala iteration %d: window acceptance %.2f, step size %.3g", i + 1, rate, h)
                window_accepts = 0
        else:
            accepted += took
        if samples is not None and i % cfg.thin == 0:
            samples[i // cfg.thin] = beta
    if burn_in_only:
        return h
    acceptance_rate = accepted / (cfg.n_iter - cfg.burn_in)
    log.debug("mala acceptance rate %.3f at step size %.3g", acceptance_rate, h)
    return Chain(
        samples=samples,
        burn_in=burn,
        acceptance_rate=acceptance_rate,
        step_size_trace=trace,
        seed=cfg.seed,
        method="mala",
    )


def mala_run(target: LogDensityTarget, init, cfg: SamplerConfig) -> Chain:
    return _mala(target, init, cfg, burn_in_only=False)


def tune_step_size(target: LogDensityTarget, init, cfg: SamplerConfig) -> float:
    """
    Runs only the adaptive burn-in of a MALA chain and returns the step size
    it settled on. With no burn-in the configured (or default) step size is
    returned unchanged.
    """
    if cfg.burn_in == 0:
        return cfg.step_size or DEFAULT_MALA_STEP_SIZE
    return _mala(target, init, replace(cfg, adapt=True), burn_in_only=True)


def posterior_mean(chain: Chain) -> np.ndarray:
    kept = chain.kept
    if kept.shape[0] == 0:
        raise EmptyChainError()
    return kept.mean(axis=0)


def sample_classifier(chain: Chain, rng: np.random.Generator) -> np.ndarray:
    kept = chain.kept
    if kept.shape[0] == 0:
        raise EmptyChainError()
    return kept[rng.integers(kept.shape[0])].copy()
