"""
Diagnostics calculator for the risk-bound rates and the matching theoretical
(lambda, tau) choices. Unnamed universal constants are set to 1. Nothing here
is used for fitting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ewacli.exception import InvalidScenarioError


class RateKind(Enum):
    SLOW = "slow"
    FAST = "fast"
    NOISELESS = "noiseless"
    SLOW_KNOWN_S = "slow_known_s"
    FAST_KNOWN_S = "fast_known_s"


@dataclass(frozen=True)
class TheoryPreset:
    kind: RateKind
    lam: float
    tau: float


def _check_domain(n: int, d: int, s_star: int):
    if not (1 <= s_star <= n < d):
        raise InvalidScenarioError(
            f"rate bounds assume 1 <= s* <= n < d, got s*={s_star}, n={n}, d={d}"
        )


def rate_bound(n: int, d: int, s_star: int, eps: float, kind) -> float:
    kind = RateKind(kind)
    _check_domain(n, d, s_star)
    if not 0 < eps < 1:
        raise InvalidScenarioError(f"eps must lie in (0, 1), got {eps}")
    log_eps = math.log(1.0 / eps)
    sparse_log = math.log(n * math.sqrt(d) / s_star)
    known_log = math.log(d * math.e / s_star)

    if kind is RateKind.SLOW:
        return s_star * math.sqrt(sparse_log) / math.sqrt(n) + log_eps / math.sqrt(
            n * math.log(n * d)
        )
    if kind in (RateKind.FAST, RateKind.NOISELESS):
        return (s_star * sparse_log + log_eps) / n
    if kind is RateKind.SLOW_KNOWN_S:
        return math.sqrt(s_star * known_log) / math.sqrt(n) + log_eps / math.sqrt(
            n * s_star * known_log
        )
    return (s_star * known_log + log_eps) / n


def theory_preset(kind, n: int, d: int, s_star: int, margin_c: float = 1.0) -> TheoryPreset:
    """
    The inverse temperature and prior scale under which each rate holds.
    ``margin_c`` is the constant of the low-noise margin condition.
    """
    kind = RateKind(kind)
    _check_domain(n, d, s_star)
    if not margin_c > 0:
        raise InvalidScenarioError(f"margin constant must be positive, got {margin_c}")
    fast_lam = 2.0 * n / (3.0 * margin_c + 2.0)
    if kind is RateKind.SLOW:
        return TheoryPreset(kind, math.sqrt(n * math.log(n * d)), 1.0 / (n * math.sqrt(d)))
    if kind is RateKind.FAST:
        return TheoryPreset(kind, fast_lam, 1.0 / (n * math.sqrt(d)))
    if kind is RateKind.NOISELESS:
        return TheoryPreset(kind, 2.0 * n / 5.0, 1.0 / (n * d))
    if kind is RateKind.SLOW_KNOWN_S:
        return TheoryPreset(
            kind,
            math.sqrt(n * s_star * math.log(d * math.e / s_star)),
            s_star / (n * math.sqrt(d)),
        )
    return TheoryPreset(kind, fast_lam, s_star / (n * math.sqrt(d)))
