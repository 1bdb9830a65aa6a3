"""
Synthetic data for the eight simulation scenarios and the real-data stand-in.

Setting I labels are sign(X beta* + N) * Z, Setting II labels are
Z * (2B - 1) with B ~ Bernoulli(sigmoid(X beta* + N)). Z is a label switch
(+1 with probability 0.9, -1 otherwise) and N is standard normal noise; each
variant turns them on or off.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from ewacli.engine.risk import LabeledDataset
from ewacli.exception import InvalidScenarioError
from scipy.special import expit

SETTINGS = ("I", "II")
VARIANTS = (1, 2, 3, 4)
BETA_STAR_SD = 10.0
SWITCH_PROBABILITY = 0.1
TEST_ROWS = 2000

# (switch Z, additive noise N) per setting and variant
_NOISE_MODEL = {
    ("I", 1): (False, False),
    ("I", 2): (False, True),
    ("I", 3): (True, False),
    ("I", 4): (True, True),
    ("II", 1): (False, False),
    ("II", 2): (True, False),
    ("II", 3): (False, True),
    ("II", 4): (True, True),
}


@dataclass(frozen=True)
class ScenarioSpec:
    setting: str
    variant: int
    n: int
    d: int
    s0: int
    seed: int = 0

    def __post_init__(self):
        setting = str(self.setting).upper()
        object.__setattr__(self, "setting", setting)
        object.__setattr__(self, "variant", int(self.variant))
        if (setting, self.variant) not in _NOISE_MODEL:
            raise InvalidScenarioError(
                f"unknown scenario {setting}.{self.variant}; settings are I and II, variants 1-4"
            )
        if self.n < 1 or self.d < 1:
            raise InvalidScenarioError(f"need n >= 1 and d >= 1, got n={self.n}, d={self.d}")
        if self.s0 < 1:
            raise InvalidScenarioError(f"sparsity must be at least 1, got {self.s0}")
        if self.s0 > self.d:
            raise InvalidScenarioError(f"sparsity {self.s0} exceeds dimension {self.d}")

    @property
    def name(self) -> str:
        return f"{self.setting}.{self.variant}"

    @property
    def label_switch(self) -> bool:
        return _NOISE_MODEL[(self.setting, self.variant)][0]

    @property
    def additive_noise(self) -> bool:
        return _NOISE_MODEL[(self.setting, self.variant)][1]

    @classmethod
    def parse(cls, name: str, n: int, d: int, s0: int, seed: int = 0) -> ScenarioSpec:
        """Builds a spec from a name such as ``I.3`` or ``II.1``."""
        setting, _, variant = name.strip().partition(".")
        if not variant.isdigit():
            raise InvalidScenarioError(f"cannot parse scenario name {name!r}")
        return cls(setting=setting, variant=int(variant), n=n, d=d, s0=s0, seed=seed)


@dataclass(frozen=True)
class SyntheticTruth:
    beta_star: np.ndarray
    support: Tuple[int, ...]
    dataset: LabeledDataset


def _draw_labels(
    features: np.ndarray, beta_star: np.ndarray, spec: ScenarioSpec, rng: np.random.Generator
) -> np.ndarray:
    rows = features.shape[0]
    u = features @ beta_star
    if spec.additive_noise:
        u = u + rng.standard_normal(rows)
    if spec.setting == "I":
        labels = np.where(u >= 0.0, 1.0, -1.0)
    else:
        labels = np.where(rng.random(rows) < expit(u), 1.0, -1.0)
    if spec.label_switch:
        labels = labels * np.where(rng.random(rows) < SWITCH_PROBABILITY, -1.0, 1.0)
    return labels


def gen_truth(spec: ScenarioSpec, rng: np.random.Generator) -> SyntheticTruth:
    support = np.sort(rng.choice(spec.d, size=spec.s0, replace=False))
    beta_star = np.zeros(spec.d)
    beta_star[support] = rng.normal(0.0, BETA_STAR_SD, size=spec.s0)
    features = rng.standard_normal((spec.n, spec.d))
    labels = _draw_labels(features, beta_star, spec, rng)
    return SyntheticTruth(
        beta_star=beta_star,
        support=tuple(int(j) for j in support),
        dataset=LabeledDataset(features, labels),
    )


def gen_labels(truth: SyntheticTruth, spec: ScenarioSpec, rng: np.random.Generator) -> LabeledDataset:
    features = truth.dataset.features
    return LabeledDataset(features, _draw_labels(features, truth.beta_star, spec, rng))


def gen_test_set(
    truth: SyntheticTruth,
    spec: ScenarioSpec,
    rng: np.random.Generator,
    n_rows: int = TEST_ROWS,
) -> LabeledDataset:
    features = rng.standard_normal((n_rows, spec.d))
    return LabeledDataset(features, _draw_labels(features, truth.beta_star, spec, rng))


def prostate_stand_in(
    rng: np.random.Generator,
    n_tumor: int = 52,
    n_normal: int = 50,
    d: int = 6033,
    informative: int = 50,
    shift: float = 0.75,
) -> LabeledDataset:
    """
    Synthetic expression matrix with the shape of the prostate tumour data:
    tumour rows are labelled +1, normal rows -1, and a random set of genes is
    shifted up or down in tumours. Rows are shuffled.
    """
    n = n_tumor + n_normal
    labels = np.concatenate([np.ones(n_tumor), -np.ones(n_normal)])
    features = rng.standard_normal((n, d))
    genes = rng.choice(d, size=min(informative, d), replace=False)
    direction = rng.choice([-1.0, 1.0], size=genes.size)
    features[:n_tumor, genes] += shift * direction
    order = rng.permutation(n)
    names = tuple(f"g{j + 1}" for j in range(d))
    return LabeledDataset(features[order], labels[order], feature_names=names)
