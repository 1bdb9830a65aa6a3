from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

from ewacli.engine.baselines import CvMeasure
from ewacli.engine.gibbs import RiskScale
from ewacli.engine.run_config import InitKind, Method
from ewacli.engine.simulation import TEST_ROWS, ScenarioSpec
from ewacli.exception import InvalidDefinitionError, InvalidScenarioError
from strictyaml import (
    Bool,
    Enum,
    Float,
    Int,
    Map,
    Optional,
    Regex,
    Seq,
    YAMLError,
    load,
)

SCENARIO_NAME = r"(I|II)\.[1-4]"

scenario_schema = Map(
    {
        "name": Regex(SCENARIO_NAME),
        "n": Int(),
        "d": Int(),
        "s0": Int(),
    }
)

sampler_schema = Map(
    {
        Optional("step_size"): Float(),
        Optional("n_iter"): Int(),
        Optional("burn_in"): Int(),
        Optional("adapt"): Bool(),
        Optional("target_acceptance"): Float(),
        Optional("thin"): Int(),
    }
)

model_schema = Map(
    {
        Optional("lam"): Float(),
        Optional("risk_scale"): Enum([scale.value for scale in RiskScale]),
        Optional("tau"): Float(),
        Optional("c1"): Float(),
        Optional("init"): Enum([kind.value for kind in InitKind]),
        Optional("stochastic"): Bool(),
        Optional("folds"): Int(),
        Optional("cv_measure"): Enum([measure.value for measure in CvMeasure]),
        Optional("intercept"): Bool(),
    }
)

benchmark_schema = Map(
    {
        "scenarios": Seq(scenario_schema),
        "methods": Seq(Enum([method.value for method in Method])),
        Optional("replications", default=100): Int(),
        Optional("seed", default=0): Int(),
        Optional("test_rows", default=TEST_ROWS): Int(),
        Optional("sampler"): sampler_schema,
        Optional("model"): model_schema,
    }
)


@dataclass(frozen=True)
class BenchmarkDefinition:
    scenarios: List[ScenarioSpec]
    methods: List[Method]
    replications: int
    seed: int
    test_rows: int
    sampler: Dict = field(default_factory=dict)
    model: Dict = field(default_factory=dict)


def load_definition(path: Path) -> BenchmarkDefinition:
    """Reads and validates a YAML benchmark definition file."""
    try:
        document = load(Path(path).read_text(), benchmark_schema).data
    except YAMLError as err:
        raise InvalidDefinitionError(str(path), str(err))
    try:
        scenarios = [
            ScenarioSpec.parse(s["name"], n=s["n"], d=s["d"], s0=s["s0"], seed=document["seed"])
            for s in document["scenarios"]
        ]
    except InvalidScenarioError as err:
        raise InvalidDefinitionError(str(path), err.message)
    if not scenarios or not document["methods"]:
        raise InvalidDefinitionError(str(path), "at least one scenario and one method are required")
    return BenchmarkDefinition(
        scenarios=scenarios,
        methods=[Method.parse(m) for m in document["methods"]],
        replications=document["replications"],
        seed=document["seed"],
        test_rows=document["test_rows"],
        sampler=dict(document.get("sampler", {})),
        model=dict(document.get("model", {})),
    )
