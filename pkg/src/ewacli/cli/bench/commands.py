from __future__ import annotations

from pathlib import Path
from typing import List, Optional

import click
import typer
from ewacli.cli.bench.definition import load_definition
from ewacli.cli.bench.manager import BENCH_DEFAULTS, BenchManager
from ewacli.cli.common.decorators import global_options
from ewacli.cli.common.flags import (
    AdaptOption,
    BurnInOption,
    C1Option,
    DEFAULT_CONTEXT_SETTINGS,
    CvMeasureOption,
    FoldsOption,
    InitOption,
    InterceptOption,
    IterationsOption,
    LambdaOption,
    RiskScaleOption,
    SeedOption,
    StepSizeOption,
    StochasticOption,
    TauOption,
    ThinOption,
    WorkersOption,
)
from ewacli.cli.common.run_settings import resolve_run_config, resolve_workers
from ewacli.engine.benchmark import DEFAULT_REPLICATIONS, ScoreOn
from ewacli.engine.run_config import Method
from ewacli.engine.simulation import TEST_ROWS, ScenarioSpec
from ewacli.output.decorators import with_output
from ewacli.output.types import CollectionResult

app = typer.Typer(
    name="bench",
    context_settings=DEFAULT_CONTEXT_SETTINGS,
    help="Runs replicated benchmarks.",
)

ALL_SCENARIOS = ["I.1", "I.2", "I.3", "I.4", "II.1", "II.2", "II.3", "II.4"]
_DATA_SECTION = "Real data"


@app.command("bench")
@with_output
@global_options
def bench(
    scenario: Optional[List[str]] = typer.Option(
        None,
        "--scenario",
        "-s",
        help="Scenario to run; repeat for several. Default: all eight.",
        show_default=False,
    ),
    n: int = typer.Option(50, "--n", help="Training rows per replication."),
    d: int = typer.Option(100, "--d", help="Features."),
    s0: int = typer.Option(10, "--s0", help="Nonzero coefficients of the true vector."),
    method: Optional[List[str]] = typer.Option(
        None,
        "--method",
        "-m",
        help="Method to run; repeat for several. Default: all five.",
        show_default=False,
    ),
    replications: int = typer.Option(
        DEFAULT_REPLICATIONS, "--replications", "-r", help="Replications per scenario."
    ),
    test_rows: int = typer.Option(TEST_ROWS, "--test-rows", help="Rows of each independent test set."),
    score_on: ScoreOn = typer.Option(
        ScoreOn.TEST.value,
        "--score-on",
        help="Score the classifiers on an independent test set or on their own training rows.",
    ),
    data: Optional[Path] = typer.Option(
        None,
        "--data",
        help="Labelled CSV; switches to repeated random train/test splits of this dataset.",
        exists=True,
        dir_okay=False,
        rich_help_panel=_DATA_SECTION,
    ),
    splits: int = typer.Option(
        100, "--splits", help="Random train/test splits.", rich_help_panel=_DATA_SECTION
    ),
    train_fraction: Optional[float] = typer.Option(
        None,
        "--train-fraction",
        help="Share of rows in each training part. Default: 0.7.",
        show_default=False,
        rich_help_panel=_DATA_SECTION,
    ),
    definition: Optional[Path] = typer.Option(
        None,
        "--definition",
        help="YAML file listing scenarios, methods and settings to benchmark.",
        exists=True,
        dir_okay=False,
    ),
    output_dir: Path = typer.Option(
        Path("bench"),
        "--output-dir",
        "-o",
        help="Directory for results.csv, records.csv and manifest.json.",
        file_okay=False,
    ),
    timings: bool = typer.Option(
        True,
        "--timings/--no-timings",
        help="Record wall-clock seconds. Without timings the output files are reproducible byte for byte.",
    ),
    workers: Optional[int] = WorkersOption,
    lam: Optional[float] = LambdaOption,
    risk_scale: Optional[str] = RiskScaleOption,
    tau: Optional[float] = TauOption,
    c1: Optional[float] = C1Option,
    step_size: Optional[float] = StepSizeOption,
    n_iter: Optional[int] = IterationsOption,
    burn_in: Optional[int] = BurnInOption,
    adapt: Optional[bool] = AdaptOption,
    thin: Optional[int] = ThinOption,
    init: Optional[str] = InitOption,
    stochastic: Optional[bool] = StochasticOption,
    folds: Optional[int] = FoldsOption,
    cv_measure: Optional[str] = CvMeasureOption,
    intercept: Optional[bool] = InterceptOption,
    seed: Optional[int] = SeedOption,
    **options,
):
    """
    Fits every method on replicated simulated scenarios, on repeated splits of
    a real dataset (--data) or as listed in a definition file (--definition),
    and reports the mean and standard deviation of the test misclassification
    rate in percent.
    """
    if data is not None and definition is not None:
        raise click.UsageError("--data and --definition cannot be used together")

    flags = dict(
        lam=lam,
        risk_scale=risk_scale,
        tau=tau,
        c1=c1,
        step_size=step_size,
        n_iter=n_iter,
        burn_in=burn_in,
        adapt=adapt,
        thin=thin,
        init=init,
        stochastic=stochastic,
        folds=folds,
        cv_measure=cv_measure,
        intercept=intercept,
        seed=seed,
        train_fraction=train_fraction,
    )
    manager = BenchManager(
        output_dir, timings=timings, workers=resolve_workers(workers), score_on=score_on
    )
    methods = [Method.parse(m) for m in method] if method else list(Method)

    if definition is not None:
        plan = load_definition(definition)
        overrides = {**plan.sampler, **plan.model, "seed": plan.seed}
        cfg = resolve_run_config(base=BENCH_DEFAULTS, overrides=overrides, **flags)
        return CollectionResult(
            manager.scenarios(
                plan.scenarios,
                [Method.parse(m) for m in method] if method else plan.methods,
                plan.replications,
                cfg,
                plan.test_rows,
            )
        )

    cfg = resolve_run_config(base=BENCH_DEFAULTS, **flags)
    if data is not None:
        return CollectionResult(manager.real_data(data, methods, splits, cfg))

    specs = [
        ScenarioSpec.parse(name, n=n, d=d, s0=s0, seed=cfg.seed)
        for name in (scenario or ALL_SCENARIOS)
    ]
    return CollectionResult(manager.scenarios(specs, methods, replications, cfg, test_rows))
