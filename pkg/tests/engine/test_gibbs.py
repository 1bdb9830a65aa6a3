import numpy as np
import pytest
from ewacli.engine.gibbs import (
    FunctionTarget,
    GibbsConfig,
    GibbsTarget,
    LossKind,
    RiskScale,
    grad_log_target,
    log_target,
    prior_target,
)
from ewacli.engine.prior import PriorConfig, log_prior_unnormalized
from ewacli.exception import (
    DimensionMismatchError,
    InvalidSamplerConfigError,
    NonFiniteGradientError,
    OutsideSupportError,
)

from tests.testing_utils.fixtures import *


def _numeric_gradient(target, beta, step=1e-6):
    return np.array(
        [
            (target.log_density(beta + step * e) - target.log_density(beta - step * e))
            / (2 * step)
            for e in np.eye(beta.shape[0])
        ]
    )


def test_log_target_of_four_points(four_points):
    cfg = GibbsConfig(lam=2.0, prior=PriorConfig(tau=1.0))
    value = log_target(np.array([1.0, -1.0]), four_points, cfg)
    assert value == pytest.approx(-2.375 - 4.0 * np.log(2.0))
    assert value == pytest.approx(-5.1475887, abs=1e-6)


@pytest.mark.parametrize("loss", [LossKind.HINGE, LossKind.LOGISTIC])
def test_gradient_matches_finite_differences(separable_data, loss):
    target = GibbsTarget(separable_data, GibbsConfig(lam=3.0, loss=loss))
    # every margin stays below the hinge kink at 1
    beta = np.array([0.031, -0.027, 0.005, 0.011, -0.008])
    margins = separable_data.labels * (separable_data.features @ beta)
    assert np.max(margins) < 0.9
    assert target.gradient(beta) == pytest.approx(
        _numeric_gradient(target, beta), rel=1e-4, abs=1e-6
    )


def test_value_and_grad_agree_with_separate_calls(separable_data):
    target = GibbsTarget(separable_data, GibbsConfig(loss=LossKind.LOGISTIC))
    beta = np.linspace(-0.5, 0.5, 5)
    value, grad = target.value_and_grad(beta)
    assert value == pytest.approx(target.log_density(beta))
    assert np.allclose(grad, grad_log_target(beta, separable_data, target.cfg))


def test_inverse_temperature_scales_the_risk_term(four_points):
    beta = np.array([0.5, 0.2])
    prior = log_prior_unnormalized(beta, PriorConfig())
    low = GibbsTarget(four_points, GibbsConfig(lam=1.0))
    high = GibbsTarget(four_points, GibbsConfig(lam=4.0))
    assert high.log_density(beta) - prior == pytest.approx(
        4.0 * (low.log_density(beta) - prior)
    )
    assert low.risk(beta) == pytest.approx(-(low.log_density(beta) - prior))


def test_outside_support(four_points):
    target = GibbsTarget(four_points, GibbsConfig(prior=PriorConfig(c1=1.0)))
    beta = np.array([1.0, 1.0])
    assert target.log_density(beta) == -np.inf
    with pytest.raises(OutsideSupportError):
        target.gradient(beta)


def test_dimension_mismatch_in_target(four_points):
    target = GibbsTarget(four_points, GibbsConfig())
    with pytest.raises(DimensionMismatchError):
        target.log_density(np.zeros(5))


def test_loss_kind_from_string():
    assert GibbsConfig(loss="logistic").loss is LossKind.LOGISTIC


@pytest.mark.parametrize("lam", [0.0, -1.0])
def test_non_positive_inverse_temperature_is_rejected(lam):
    with pytest.raises(InvalidSamplerConfigError):
        GibbsConfig(lam=lam)


def test_prior_target():
    target = prior_target(PriorConfig(tau=1.0), 2)
    assert target.log_density(np.array([1.0, 1.0])) == pytest.approx(-4.0 * np.log(2.0))
    assert target.gradient(np.array([1.0, 0.0])).tolist() == [-2.0, 0.0]


def test_function_target_rejects_zero_density_points():
    target = FunctionTarget(1, lambda b: -np.inf, lambda b: np.zeros(1))
    with pytest.raises(NonFiniteGradientError):
        target.value_and_grad(np.zeros(1))


def test_summed_risk_scale_multiplies_lam_by_n(separable_data):
    beta = np.array([0.3, -0.2, 0.1, 0.0, 0.5])
    summed = GibbsTarget(separable_data, GibbsConfig(lam=1.5, scale="sum"))
    averaged = GibbsTarget(separable_data, GibbsConfig(lam=1.5 * separable_data.n))

    assert summed.cfg.scale is RiskScale.SUM
    assert summed.temperature == averaged.temperature
    assert summed.log_density(beta) == pytest.approx(averaged.log_density(beta))


def test_hinge_risk_is_piecewise_linear_along_a_line(noisy_plane):
    start = np.array([0.2, -0.3])
    direction = np.array([1.0, 0.5])
    target = GibbsTarget(noisy_plane, GibbsConfig())
    offset = noisy_plane.labels * (noisy_plane.features @ start)
    slope = noisy_plane.labels * (noisy_plane.features @ direction)
    # a margin crosses 1 where offset + t * slope == 1
    breaks = np.unique(((1.0 - offset) / slope)[np.abs(slope) > 1e-9])
    breaks = breaks[np.abs(breaks) < 5.0]

    def along(t):
        return target.risk(start + t * direction)

    knots = np.concatenate([[-5.0], breaks, [5.0]])
    for left, right in zip(knots, knots[1:]):
        middle = 0.5 * (left + right)
        chord = 0.5 * (along(left) + along(right))
        assert along(middle) == pytest.approx(chord, abs=1e-10)

    for t in breaks:
        crossing = np.isclose(offset + t * slope, 1.0)
        jump = np.sum(np.abs(slope[crossing])) / noisy_plane.n
        left_slope = (along(t) - along(t - 1e-6)) / 1e-6
        right_slope = (along(t + 1e-6) - along(t)) / 1e-6
        assert right_slope - left_slope == pytest.approx(jump, abs=1e-4)
