"""
Replicated benchmark of the classifiers on simulated scenarios and on
repeated random splits of a real dataset.

Every replication derives its random streams from (seed, replication, slot)
alone, so replications can run in any order or in parallel and still produce
the same records.
"""
from __future__ import annotations

import dataclasses
import json
import logging
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy
from click import ClickException
from ewacli.__about__ import VERSION
from ewacli.engine.data_io import split, standardize
from ewacli.engine.estimators import fit_method, lasso_report
from ewacli.engine.risk import LabeledDataset
from ewacli.engine.baselines import CvMeasure
from ewacli.engine.gibbs import RiskScale
from ewacli.engine.run_config import InitKind, Method, RunConfig
from ewacli.engine.samplers import SamplerConfig
from ewacli.engine.simulation import TEST_ROWS, ScenarioSpec, gen_test_set, gen_truth
from ewacli.exception import InvalidSamplerConfigError

log = logging.getLogger(__name__)

RESULT_COLUMNS = ["scenario", "method", "mean_pct", "sd_pct", "reps", "failed", "seconds"]
RECORD_COLUMNS = ["scenario", "method", "replication", "misclassification_pct", "seconds", "error"]
DEFAULT_REPLICATIONS = 100

TRUTH_SLOT, TEST_SLOT, LASSO_SLOT = 0, 1, 2
_METHOD_SLOT = {method: 3 + i for i, method in enumerate(Method)}
# MALA runs first so its adapted step size can seed the LMC chain of the same loss
_RUN_ORDER = [Method.LASSO, Method.H_MALA, Method.LOGIT_MALA, Method.H_LMC, Method.LOGIT_LMC]


class ScoreOn(Enum):
    """Rows the fitted classifiers are scored on."""

    TEST = "test"
    TRAIN = "train"


def stream(seed: int, *key: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=key)


@dataclass(frozen=True)
class BenchmarkSettings:
    lam: float = 1.0
    risk_scale: str = RiskScale.SUM.value
    tau: float = 1.0
    c1: float = 1e6
    init: str = InitKind.AUTO.value
    stochastic: bool = False
    folds: int = 10
    cv_measure: str = CvMeasure.DEVIANCE.value
    intercept: bool = False
    test_rows: int = TEST_ROWS
    score_on: str = ScoreOn.TEST.value
    workers: int = 1

    def __post_init__(self):
        try:
            ScoreOn(self.score_on)
        except ValueError:
            raise InvalidSamplerConfigError(
                f"unknown scoring rows {self.score_on!r}; choose from test, train"
            )

    def run_config(self, chain_cfg: SamplerConfig) -> RunConfig:
        return RunConfig(
            lam=self.lam,
            risk_scale=self.risk_scale,
            tau=self.tau,
            c1=self.c1,
            step_size=chain_cfg.step_size,
            n_iter=chain_cfg.n_iter,
            burn_in=chain_cfg.burn_in,
            adapt=chain_cfg.adapt,
            target_acceptance=chain_cfg.target_acceptance,
            thin=chain_cfg.thin,
            seed=chain_cfg.seed,
            init=self.init,
            stochastic=self.stochastic,
            folds=self.folds,
            cv_measure=self.cv_measure,
            intercept=self.intercept,
        )


@dataclass(frozen=True)
class ReplicationRecord:
    scenario: str
    method: str
    replication: int
    misclassification: float
    seconds: float
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class BenchmarkCell:
    scenario: str
    method: str
    mean_pct: float
    sd_pct: float
    reps: int
    seconds: float
    failed: int = 0


@dataclass(frozen=True)
class BenchmarkResult:
    cells: Tuple[BenchmarkCell, ...]
    records: Tuple[ReplicationRecord, ...]
    manifest: Dict = field(default_factory=dict, compare=False)

    def cell(self, scenario: str, method) -> BenchmarkCell:
        method = Method.parse(method.value if isinstance(method, Method) else method).value
        for cell in self.cells:
            if cell.scenario == scenario and cell.method == method:
                return cell
        raise KeyError((scenario, method))

    def to_frame(self, timings: bool = True) -> pd.DataFrame:
        frame = pd.DataFrame(
            [dataclasses.asdict(c) for c in self.cells], columns=RESULT_COLUMNS
        )
        if not timings:
            frame["seconds"] = ""
        return frame

    def records_frame(self, timings: bool = True) -> pd.DataFrame:
        rows = [
            {
                "scenario": r.scenario,
                "method": r.method,
                "replication": r.replication,
                "misclassification_pct": 100.0 * r.misclassification,
                "seconds": r.seconds if timings else "",
                "error": r.error or "",
            }
            for r in self.records
        ]
        return pd.DataFrame(rows, columns=RECORD_COLUMNS)

    def write(self, output_dir, timings: bool = True) -> List[Path]:
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        results = output_dir / "results.csv"
        records = output_dir / "records.csv"
        manifest = output_dir / "manifest.json"
        self.to_frame(timings).to_csv(results, index=False, float_format="%.10g", lineterminator="\n")
        self.records_frame(timings).to_csv(records, index=False, float_format="%.10g", lineterminator="\n")
        manifest.write_text(json.dumps(self.manifest, indent=2, sort_keys=True) + "\n")
        return [results, records, manifest]


def _ordered(methods: Sequence[Method]) -> List[Method]:
    chosen = {Method.parse(m.value if isinstance(m, Method) else m) for m in methods}
    return [m for m in _RUN_ORDER if m in chosen]


def _needs_lasso(methods: Sequence[Method], cfg: RunConfig) -> bool:
    if Method.LASSO in methods:
        return True
    init = InitKind(cfg.init)
    if init is InitKind.LASSO:
        return any(m.sampler for m in methods)
    return init is InitKind.AUTO and any(m.sampler == "lmc" for m in methods)


def _score_methods(
    name: str,
    replication: int,
    train: LabeledDataset,
    test: LabeledDataset,
    methods: Sequence[Method],
    cfg: RunConfig,
    seed: int,
) -> List[ReplicationRecord]:
    records = []
    lasso = None
    lasso_seconds = 0.0
    if _needs_lasso(methods, cfg):
        started = time.perf_counter()
        try:
            lasso = lasso_report(train, cfg, stream(seed, replication, LASSO_SLOT))
        except ClickException as err:
            log.warning("%s replication %d: Lasso failed: %s", name, replication, err.message)
        lasso_seconds = time.perf_counter() - started

    mala_steps = {}
    for method in methods:
        started = time.perf_counter()
        try:
            if method is Method.LASSO and lasso is None:
                raise InvalidSamplerConfigError("cross-validated Lasso fit is unavailable")
            fitted = fit_method(
                method,
                train,
                cfg,
                stream(seed, replication, _METHOD_SLOT[method]),
                lasso=lasso,
                mala_step_size=mala_steps.get(method.loss),
            )
            error = fitted.misclassification(test)
            message = None
            if method.sampler == "mala":
                mala_steps[method.loss] = fitted.chain_summary["final_step_size"]
        except (ClickException, FloatingPointError, np.linalg.LinAlgError) as err:
            error = float("nan")
            message = getattr(err, "message", None) or str(err)
            log.warning("%s replication %d: %s failed: %s", name, replication, method.value, message)
        seconds = time.perf_counter() - started
        if method is Method.LASSO:
            seconds += lasso_seconds
        records.append(
            ReplicationRecord(name, method.value, replication, error, seconds, message)
        )
    return records


def scenario_labels(scenarios: Sequence[ScenarioSpec]) -> List[str]:
    """Scenario names, qualified by their dimensions when a name repeats."""
    names = [spec.name for spec in scenarios]
    return [
        spec.name
        if names.count(spec.name) == 1
        else f"{spec.name} n={spec.n} d={spec.d} s0={spec.s0}"
        for spec in scenarios
    ]


def _simulated_replication(
    label: str,
    spec: ScenarioSpec,
    replication: int,
    methods: Sequence[Method],
    cfg: RunConfig,
    test_rows: int,
    score_on: str = ScoreOn.TEST.value,
) -> List[ReplicationRecord]:
    truth = gen_truth(spec, np.random.default_rng(stream(spec.seed, replication, TRUTH_SLOT)))
    if ScoreOn(score_on) is ScoreOn.TRAIN:
        test = truth.dataset
    else:
        test = gen_test_set(
            truth, spec, np.random.default_rng(stream(spec.seed, replication, TEST_SLOT)), test_rows
        )
    log.info("scenario %s replication %d", label, replication + 1)
    return _score_methods(label, replication, truth.dataset, test, methods, cfg, spec.seed)


def _split_replication(
    name: str,
    data: LabeledDataset,
    replication: int,
    methods: Sequence[Method],
    cfg: RunConfig,
    train_fraction: float,
    seed: int,
    score_on: str = ScoreOn.TEST.value,
) -> List[ReplicationRecord]:
    train, test = split(data, train_fraction, np.random.default_rng(stream(seed, replication, TRUTH_SLOT)))
    test, _ = standardize(train, test)
    train, _ = standardize(train, train)
    if ScoreOn(score_on) is ScoreOn.TRAIN:
        test = train
    log.info("%s split %d: %d train rows, %d test rows", name, replication + 1, train.n, test.n)
    return _score_methods(name, replication, train, test, methods, cfg, seed)


def _aggregate(records: Sequence[ReplicationRecord], names: Sequence[str], methods: Sequence[Method]) -> Tuple[BenchmarkCell, ...]:
    cells = []
    for name in names:
        for method in methods:
            mine = [r for r in records if r.scenario == name and r.method == method.value]
            good = np.array([100.0 * r.misclassification for r in mine if not r.failed])
            cells.append(
                BenchmarkCell(
                    scenario=name,
                    method=method.value,
                    mean_pct=float(good.mean()) if good.size else float("nan"),
                    sd_pct=float(good.std(ddof=1)) if good.size > 1 else 0.0,
                    reps=int(good.size),
                    seconds=float(sum(r.seconds for r in mine)),
                    failed=len(mine) - int(good.size),
                )
            )
    return tuple(cells)


def _execute(tasks, workers: int) -> List[ReplicationRecord]:
    """Runs (function, args) tasks, in a process pool when workers > 1."""
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, *args) for fn, args in tasks]
            batches = [f.result() for f in futures]
    else:
        batches = [fn(*args) for fn, args in tasks]
    return [record for batch in batches for record in batch]


def _manifest(kind: str, chain_cfg: SamplerConfig, settings: BenchmarkSettings, **extra) -> Dict:
    return {
        "kind": kind,
        "ewa_version": VERSION,
        "numpy_version": np.__version__,
        "scipy_version": scipy.__version__,
        "python_version": platform.python_version(),
        "sampler": dataclasses.asdict(chain_cfg),
        "settings": dataclasses.asdict(settings),
        **extra,
    }


def run_benchmark(
    scenarios: Sequence[ScenarioSpec],
    methods: Sequence,
    replications: int,
    chain_cfg: SamplerConfig,
    settings: BenchmarkSettings = BenchmarkSettings(),
) -> BenchmarkResult:
    if replications < 1:
        raise InvalidSamplerConfigError(f"need at least one replication, got {replications}")
    ordered = _ordered(methods)
    cfg = settings.run_config(chain_cfg)
    names = scenario_labels(scenarios)
    tasks = [
        (_simulated_replication, (label, spec, rep, ordered, cfg, settings.test_rows, settings.score_on))
        for label, spec in zip(names, scenarios)
        for rep in range(replications)
    ]
    records = _execute(tasks, settings.workers)
    manifest = _manifest(
        "simulation",
        chain_cfg,
        settings,
        replications=replications,
        methods=[m.value for m in ordered],
        scenarios=[dataclasses.asdict(spec) for spec in scenarios],
    )
    return BenchmarkResult(_aggregate(records, names, ordered), tuple(records), manifest)


def run_real_data_benchmark(
    data: LabeledDataset,
    methods: Sequence,
    splits: int,
    train_fraction: float,
    chain_cfg: SamplerConfig,
    settings: BenchmarkSettings = BenchmarkSettings(),
    seed: int = 0,
    name: str = "real",
) -> BenchmarkResult:
    """Repeated random train/test splits with standardisation fitted on each training part."""
    if splits < 1:
        raise InvalidSamplerConfigError(f"need at least one split, got {splits}")
    ordered = _ordered(methods)
    cfg = settings.run_config(chain_cfg)
    tasks = [
        (_split_replication, (name, data, rep, ordered, cfg, train_fraction, seed, settings.score_on))
        for rep in range(splits)
    ]
    records = _execute(tasks, settings.workers)
    manifest = _manifest(
        "real_data",
        chain_cfg,
        settings,
        dataset={"name": name, "rows": data.n, "features": data.d},
        splits=splits,
        train_fraction=train_fraction,
        seed=seed,
        methods=[m.value for m in ordered],
    )
    return BenchmarkResult(_aggregate(records, [name], ordered), tuple(records), manifest)
