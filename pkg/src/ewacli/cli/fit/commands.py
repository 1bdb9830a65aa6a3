from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
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
    data_option,
    output_option,
)
from ewacli.cli.common.run_settings import resolve_run_config
from ewacli.cli.fit.manager import FitManager
from ewacli.output.decorators import with_output
from ewacli.output.types import ObjectResult

app = typer.Typer(
    name="fit",
    context_settings=DEFAULT_CONTEXT_SETTINGS,
    help="Fits a classifier and writes a model file.",
)


@app.command("fit")
@with_output
@global_options
def fit(
    data: Path = data_option(),
    output: Path = output_option("model.json", "Model file to write."),
    method: Optional[str] = typer.Option(
        None,
        "--method",
        "-m",
        help="One of H_MALA (default), H_LMC, Logit_MALA, Logit_LMC, Lasso.",
        show_default=False,
    ),
    standardize: Optional[bool] = typer.Option(
        None,
        "--standardize/--no-standardize",
        help="Standardise features before fitting; the statistics are stored in the model.",
        show_default=False,
    ),
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
    Fits one method to a labelled CSV file. Chains report the posterior mean
    unless --stochastic is given.
    """
    cfg = resolve_run_config(
        method=method,
        standardize=standardize,
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
    )
    return ObjectResult(FitManager().fit(data, output, cfg))
