from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
from ewacli.cli.common.decorators import global_options
from ewacli.cli.common.flags import DEFAULT_CONTEXT_SETTINGS
from ewacli.cli.simulate.manager import SimulateManager
from ewacli.engine.simulation import TEST_ROWS, ScenarioSpec
from ewacli.output.decorators import with_output
from ewacli.output.types import CollectionResult

app = typer.Typer(
    name="simulate",
    context_settings=DEFAULT_CONTEXT_SETTINGS,
    help="Generates synthetic datasets.",
)


@app.command("simulate")
@with_output
@global_options
def simulate(
    scenario: str = typer.Option(
        "I.1", "--scenario", "-s", help="Scenario name: I.1 to I.4 or II.1 to II.4."
    ),
    n: int = typer.Option(50, "--n", help="Training rows."),
    d: int = typer.Option(100, "--d", help="Features."),
    s0: int = typer.Option(10, "--s0", help="Nonzero coefficients of the true vector."),
    test_rows: int = typer.Option(TEST_ROWS, "--test-rows", help="Rows of the independent test set."),
    seed: Optional[int] = typer.Option(0, "--seed", help="Random seed."),
    prostate_stand_in: bool = typer.Option(
        False,
        "--prostate-stand-in",
        help="Write a 102 x 6033 synthetic stand-in for the prostate tumour data instead.",
        is_flag=True,
    ),
    output_dir: Path = typer.Option(
        Path("simulated"), "--output-dir", "-o", help="Directory for the CSV files.", file_okay=False
    ),
    **options,
):
    """
    Writes train.csv, test.csv and truth.json for one scenario. With
    --prostate-stand-in a single labelled CSV with the real data geometry is
    written instead.
    """
    manager = SimulateManager()
    if prostate_stand_in:
        return CollectionResult(manager.prostate(seed, output_dir))
    spec = ScenarioSpec.parse(scenario, n=n, d=d, s0=s0, seed=seed)
    return CollectionResult(manager.scenario(spec, test_rows, output_dir))
