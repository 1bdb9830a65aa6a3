from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
from ewacli.cli.common.decorators import global_options
from ewacli.cli.common.flags import (
    DEFAULT_CONTEXT_SETTINGS,
    CvMeasureOption,
    FoldsOption,
    InterceptOption,
    SeedOption,
    WorkersOption,
    data_option,
)
from ewacli.cli.common.run_settings import resolve_run_config, resolve_workers
from ewacli.cli.cv.manager import CvManager
from ewacli.output.decorators import with_output
from ewacli.output.types import CollectionResult

app = typer.Typer(
    name="cv",
    context_settings=DEFAULT_CONTEXT_SETTINGS,
    help="Cross-validates the logistic Lasso.",
)


@app.command("cv")
@with_output
@global_options
def cv(
    data: Path = data_option(),
    folds: Optional[int] = FoldsOption,
    cv_measure: Optional[str] = CvMeasureOption,
    intercept: Optional[bool] = InterceptOption,
    standardize: Optional[bool] = typer.Option(
        None,
        "--standardize/--no-standardize",
        help="Standardise features before cross-validation.",
        show_default=False,
    ),
    seed: Optional[int] = SeedOption,
    workers: Optional[int] = WorkersOption,
    **options,
):
    """
    Prints the Lasso regularisation path with the cross-validated
    error (misclassification rate or deviance) of every penalty and marks the
    selected one.
    """
    cfg = resolve_run_config(
        folds=folds,
        cv_measure=cv_measure,
        intercept=intercept,
        standardize=standardize,
        seed=seed,
    )
    return CollectionResult(CvManager().select(data, cfg, resolve_workers(workers)))
