import pytest
from ewacli.engine.baselines import CvMeasure
from ewacli.engine.gibbs import LossKind, RiskScale
from ewacli.engine.run_config import InitKind, Method, RunConfig
from ewacli.exception import InvalidConfigurationError

from tests.testing_utils.fixtures import *


def test_defaults():
    cfg = RunConfig()
    assert cfg.method == "H_MALA"
    assert (cfg.lam, cfg.tau, cfg.c1) == (1.0, 1.0, 1e6)
    assert (cfg.n_iter, cfg.burn_in) == (30000, 5000)
    assert cfg.step_size is None
    assert cfg.init == InitKind.ZERO.value
    assert cfg.risk_scale == "sum"
    assert cfg.cv_measure == "misclassification"


@pytest.mark.parametrize(
    "text, method, loss, sampler",
    [
        ("H_LMC", Method.H_LMC, LossKind.HINGE, "lmc"),
        ("h_mala", Method.H_MALA, LossKind.HINGE, "mala"),
        ("Logit_LMC", Method.LOGIT_LMC, LossKind.LOGISTIC, "lmc"),
        (" logit_mala ", Method.LOGIT_MALA, LossKind.LOGISTIC, "mala"),
        ("lasso", Method.LASSO, None, None),
    ],
)
def test_method_parsing(text, method, loss, sampler):
    parsed = Method.parse(text)
    assert parsed is method
    assert parsed.loss is loss
    assert parsed.sampler == sampler


def test_unknown_method():
    with pytest.raises(InvalidConfigurationError) as err:
        Method.parse("SVM")
    assert "Logit_MALA" in err.value.message


def test_unknown_init():
    with pytest.raises(InvalidConfigurationError):
        RunConfig(init="random")


def test_replace_ignores_missing_flags():
    cfg = RunConfig().replace(lam=3.0, tau=None, seed=None)
    assert cfg.lam == 3.0
    assert cfg.tau == 1.0
    assert cfg.seed == 0


def test_merged_coerces_strings():
    cfg = RunConfig().merged(
        {"lam": "2.5", "n_iter": "100", "adapt": "false", "step_size": "1e-4", "method": "lasso"}
    )
    assert cfg.lam == 2.5
    assert cfg.n_iter == 100
    assert cfg.adapt is False
    assert cfg.step_size == 1e-4
    assert cfg.method == "Lasso"


@pytest.mark.parametrize(
    "values",
    [{"unknown_key": 1}, {"n_iter": "many"}, {"adapt": "perhaps"}, {"thin": 2.5}, {"risk_scale": "median"}, {"cv_measure": "auc"}],
)
def test_merged_rejects_bad_values(values):
    with pytest.raises(InvalidConfigurationError):
        RunConfig().merged(values)


def test_toml_round_trip():
    cfg = RunConfig(method="Logit_LMC", lam=4.0, step_size=1e-5, stochastic=True, data_path="x.csv")
    assert RunConfig.from_toml(cfg.to_toml()) == cfg
    assert "output_path" not in cfg.to_toml()


def test_dict_round_trip():
    cfg = RunConfig(method="Lasso", folds=5, intercept=True)
    assert RunConfig.from_dict(cfg.to_dict()) == cfg


def test_derived_configs():
    cfg = RunConfig(method="Logit_MALA", lam=2.0, tau=0.5, c1=100.0, folds=3, seed=9)
    assert cfg.gibbs_config().loss is LossKind.LOGISTIC
    assert cfg.gibbs_config(LossKind.HINGE).loss is LossKind.HINGE
    assert cfg.prior_config().tau == 0.5
    assert cfg.lasso_config().folds == 3
    assert cfg.sampler_config().seed == 9
    assert cfg.sampler_config(seed=4).seed == 4


def test_risk_scale_and_cv_measure_reach_the_engine():
    cfg = RunConfig().merged({"risk_scale": "mean", "cv_measure": "deviance"})
    assert cfg.gibbs_config().scale is RiskScale.MEAN
    assert cfg.lasso_config().measure is CvMeasure.DEVIANCE
    assert RunConfig().gibbs_config().scale is RiskScale.SUM


def test_unknown_risk_scale():
    with pytest.raises(InvalidConfigurationError) as err:
        RunConfig(risk_scale="median")
    assert "mean" in err.value.message
