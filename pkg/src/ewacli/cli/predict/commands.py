from __future__ import annotations

from pathlib import Path

import typer
from ewacli.cli.common.decorators import global_options
from ewacli.cli.common.flags import DEFAULT_CONTEXT_SETTINGS, data_option, output_option
from ewacli.cli.predict.manager import PredictManager
from ewacli.output.decorators import with_output
from ewacli.output.types import ObjectResult

app = typer.Typer(
    name="predict",
    context_settings=DEFAULT_CONTEXT_SETTINGS,
    help="Predicts labels with a fitted model.",
)


@app.command("predict")
@with_output
@global_options
def predict(
    model: Path = typer.Option(
        ...,
        "--model",
        help="Model file written by `ewa fit`.",
        exists=True,
        dir_okay=False,
    ),
    data: Path = data_option("CSV with the model's feature columns; a `y` column is optional."),
    output: Path = output_option("predictions.csv", "Labels CSV to write."),
    **options,
):
    """
    Writes one predicted label (-1 or +1) per row. When the input has labels the
    misclassification rate is reported too.
    """
    return ObjectResult(PredictManager().predict(model, data, output))
