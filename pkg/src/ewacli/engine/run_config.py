"""
The serialisable description of one experiment.

A ``RunConfig`` is assembled from built-in defaults, the ``[run]`` section of
the configuration file, ``EWA_RUN_*`` environment variables and command-line
flags, in that order of precedence, and is embedded in model files and run
manifests.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Mapping, Optional

import tomlkit
from ewacli.engine.baselines import CvMeasure, LassoConfig
from ewacli.engine.gibbs import GibbsConfig, LossKind, RiskScale
from ewacli.engine.prior import DEFAULT_C1, DEFAULT_TAU, PriorConfig
from ewacli.engine.samplers import DEFAULT_BURN_IN, DEFAULT_N_ITER, SamplerConfig
from ewacli.exception import InvalidConfigurationError


class Method(Enum):
    H_LMC = "H_LMC"
    H_MALA = "H_MALA"
    LOGIT_LMC = "Logit_LMC"
    LOGIT_MALA = "Logit_MALA"
    LASSO = "Lasso"

    @property
    def loss(self) -> Optional[LossKind]:
        if self is Method.LASSO:
            return None
        return LossKind.HINGE if self.value.startswith("H_") else LossKind.LOGISTIC

    @property
    def sampler(self) -> Optional[str]:
        if self is Method.LASSO:
            return None
        return self.value.rsplit("_", 1)[1].lower()

    @classmethod
    def parse(cls, value: str) -> Method:
        for method in cls:
            if method.value.lower() == str(value).strip().lower():
                return method
        raise InvalidConfigurationError(
            f"Unknown method {value!r}; choose from {', '.join(m.value for m in cls)}"
        )


class InitKind(Enum):
    ZERO = "zero"
    LASSO = "lasso"
    # LMC chains start at the Lasso, MALA chains at zero
    AUTO = "auto"


@dataclass(frozen=True)
class RunConfig:
    method: str = Method.H_MALA.value
    lam: float = 1.0
    risk_scale: str = RiskScale.SUM.value
    tau: float = DEFAULT_TAU
    c1: float = DEFAULT_C1
    step_size: Optional[float] = None
    n_iter: int = DEFAULT_N_ITER
    burn_in: int = DEFAULT_BURN_IN
    adapt: bool = True
    target_acceptance: float = 0.5
    thin: int = 1
    seed: int = 0
    init: str = InitKind.ZERO.value
    stochastic: bool = False
    standardize: bool = False
    train_fraction: float = 0.7
    folds: int = 10
    cv_measure: str = CvMeasure.MISCLASSIFICATION.value
    intercept: bool = False
    data_path: Optional[str] = None
    output_path: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "method", Method.parse(self.method).value)
        try:
            InitKind(self.init)
        except ValueError:
            raise InvalidConfigurationError(
                f"Unknown init {self.init!r}; choose from zero, lasso, auto"
            )
        _check_choice("risk_scale", self.risk_scale, RiskScale)
        _check_choice("cv_measure", self.cv_measure, CvMeasure)

    @property
    def method_kind(self) -> Method:
        return Method.parse(self.method)

    def sampler_config(self, seed: Optional[int] = None) -> SamplerConfig:
        return SamplerConfig(
            step_size=self.step_size,
            n_iter=self.n_iter,
            burn_in=self.burn_in,
            adapt=self.adapt,
            target_acceptance=self.target_acceptance,
            thin=self.thin,
            seed=self.seed if seed is None else seed,
        )

    def gibbs_config(self, loss: Optional[LossKind] = None) -> GibbsConfig:
        loss = loss or self.method_kind.loss or LossKind.HINGE
        return GibbsConfig(
            lam=self.lam, loss=loss, prior=self.prior_config(), scale=RiskScale(self.risk_scale)
        )

    def prior_config(self) -> PriorConfig:
        return PriorConfig(tau=self.tau, c1=self.c1)

    def lasso_config(self) -> LassoConfig:
        return LassoConfig(
            folds=self.folds, intercept=self.intercept, measure=CvMeasure(self.cv_measure)
        )

    def replace(self, **overrides) -> RunConfig:
        """Returns a copy with every override that is not None applied."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None}
        )

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RunConfig:
        return cls().merged(data)

    def merged(self, data: Mapping[str, Any]) -> RunConfig:
        """Applies values from a config section or env mapping, coercing strings."""
        known = {f.name: f for f in dataclasses.fields(self)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise InvalidConfigurationError(
                f"Unknown run settings: {', '.join(unknown)}"
            )
        values = {k: _coerce(k, v) for k, v in data.items()}
        return dataclasses.replace(self, **values)

    def to_toml(self) -> str:
        document = tomlkit.document()
        run = tomlkit.table()
        for key, value in self.to_dict().items():
            # TOML has no null; absent keys read back as None
            if value is not None:
                run.add(key, value)
        document.add("run", run)
        return tomlkit.dumps(document)

    @classmethod
    def from_toml(cls, text: str) -> RunConfig:
        document = tomlkit.parse(text)
        run = document.get("run")
        return cls.from_dict(run.unwrap() if run is not None else {})


def _check_choice(name: str, value: str, kind) -> None:
    choices = [member.value for member in kind]
    if value not in choices:
        raise InvalidConfigurationError(
            f"Unknown {name} {value!r}; choose from {', '.join(choices)}"
        )


_BOOLEAN_STRINGS = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def _field_kind(name: str):
    default = RunConfig.__dataclass_fields__[name].default
    if name in ("step_size",):
        return float
    if name in ("data_path", "output_path", "method", "init", "risk_scale", "cv_measure"):
        return str
    return type(default)


def _coerce(name: str, value: Any) -> Any:
    if value is None:
        return None
    kind = _field_kind(name)
    try:
        if kind is bool:
            if isinstance(value, bool):
                return value
            return _BOOLEAN_STRINGS[str(value).strip().lower()]
        if kind is int:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if kind is float:
            return float(value)
        return str(value)
    except (KeyError, ValueError, TypeError):
        raise InvalidConfigurationError(
            f"Run setting {name} expects a {kind.__name__}, got {value!r}"
        )
