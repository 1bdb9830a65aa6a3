from __future__ import annotations

import dataclasses
import logging
from pathlib import Path
from typing import List, Sequence

from ewacli.engine.benchmark import (
    BenchmarkResult,
    BenchmarkSettings,
    ScoreOn,
    run_benchmark,
    run_real_data_benchmark,
)
from ewacli.engine.data_io import load_csv
from ewacli.engine.run_config import Method, RunConfig
from ewacli.engine.simulation import TEST_ROWS, ScenarioSpec

log = logging.getLogger(__name__)

# bench starts LMC chains at the Lasso, stores every 10th draw and
# cross-validates the Lasso on held-out deviance
BENCH_DEFAULTS = RunConfig(init="auto", thin=10, cv_measure="deviance")


def _settings(cfg: RunConfig, test_rows: int, workers: int, score_on: ScoreOn) -> BenchmarkSettings:
    return BenchmarkSettings(
        lam=cfg.lam,
        risk_scale=cfg.risk_scale,
        tau=cfg.tau,
        c1=cfg.c1,
        init=cfg.init,
        stochastic=cfg.stochastic,
        folds=cfg.folds,
        cv_measure=cfg.cv_measure,
        intercept=cfg.intercept,
        test_rows=test_rows,
        score_on=score_on.value,
        workers=workers,
    )


def _rows(result: BenchmarkResult, timings: bool) -> List[dict]:
    rows = []
    for cell in result.cells:
        row = dataclasses.asdict(cell)
        if not timings:
            row.pop("seconds")
        rows.append(row)
    return rows


class BenchManager:
    def __init__(
        self,
        output_dir: Path,
        timings: bool = True,
        workers: int = 1,
        score_on: ScoreOn = ScoreOn.TEST,
    ):
        self._output_dir = output_dir
        self._score_on = score_on
        self._timings = timings
        self._workers = workers

    def _finish(self, result: BenchmarkResult) -> List[dict]:
        paths = result.write(self._output_dir, timings=self._timings)
        log.info("Benchmark results written to %s", ", ".join(str(p) for p in paths))
        return _rows(result, self._timings)

    def scenarios(
        self,
        specs: Sequence[ScenarioSpec],
        methods: Sequence[Method],
        replications: int,
        cfg: RunConfig,
        test_rows: int = TEST_ROWS,
    ) -> List[dict]:
        specs = [dataclasses.replace(spec, seed=cfg.seed) for spec in specs]
        log.info(
            "Benchmarking %d scenario(s) x %d method(s), %d replication(s) each",
            len(specs),
            len(methods),
            replications,
        )
        result = run_benchmark(
            specs,
            methods,
            replications,
            cfg.sampler_config(),
            _settings(cfg, test_rows, self._workers, self._score_on),
        )
        return self._finish(result)

    def real_data(
        self,
        data_path: Path,
        methods: Sequence[Method],
        splits: int,
        cfg: RunConfig,
    ) -> List[dict]:
        data = load_csv(data_path)
        log.info("Benchmarking on %s: %d rows, %d features, %d splits", data_path, data.n, data.d, splits)
        result = run_real_data_benchmark(
            data,
            methods,
            splits,
            cfg.train_fraction,
            cfg.sampler_config(),
            _settings(cfg, TEST_ROWS, self._workers, self._score_on),
            seed=cfg.seed,
            name=Path(data_path).stem,
        )
        return self._finish(result)
