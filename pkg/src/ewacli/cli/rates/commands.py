from __future__ import annotations

import typer
from ewacli.cli.common.decorators import global_options
from ewacli.cli.common.flags import DEFAULT_CONTEXT_SETTINGS
from ewacli.cli.rates.manager import RatesManager
from ewacli.output.decorators import with_output
from ewacli.output.types import CollectionResult

app = typer.Typer(
    name="rates",
    context_settings=DEFAULT_CONTEXT_SETTINGS,
    help="Evaluates the theoretical excess-risk rates.",
)


@app.command("rates")
@with_output
@global_options
def rates(
    n: int = typer.Option(..., "--n", help="Sample size."),
    d: int = typer.Option(..., "--d", help="Dimension."),
    s_star: int = typer.Option(..., "--s-star", help="Sparsity of the best linear classifier."),
    eps: float = typer.Option(0.05, "--eps", help="Confidence level; bounds hold with probability 1 - eps."),
    margin_c: float = typer.Option(1.0, "--margin-c", help="Constant of the margin condition."),
    **options,
):
    """
    Prints every rate bound with the inverse temperature and prior scale it
    assumes. Universal constants are taken as 1, so only the scaling in n, d
    and s* is meaningful.
    """
    return CollectionResult(RatesManager().table(n, d, s_star, eps, margin_c))
