from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import click
import typer
from ewacli import __about__
from ewacli.app.commands_registration.command_plugins_loader import (
    load_builtin_command_plugins,
)
from ewacli.app.commands_registration.typer_registration import (
    register_commands_from_plugins,
)
from ewacli.app.main_typer import EwaMainTyper
from ewacli.config import cli_config, config_init
from ewacli.output.formats import OutputFormat
from ewacli.output.printing import print_result
from ewacli.output.types import CollectionResult

app: EwaMainTyper = EwaMainTyper()
log = logging.getLogger(__name__)


def _do_not_execute_on_completion(callback):
    def enriched_callback(value):
        if click.get_current_context().resilient_parsing:
            return
        callback(value)

    return enriched_callback


def _config_init_callback(configuration_file: Optional[Path]):
    config_init(configuration_file)


@_do_not_execute_on_completion
def _version_callback(value: bool):
    if value:
        typer.echo(f"ewa version: {__about__.VERSION}")
        raise typer.Exit()


@_do_not_execute_on_completion
def _info_callback(value: bool):
    if value:
        result = CollectionResult(
            [
                {"key": "version", "value": __about__.VERSION},
                {"key": "default_config_file_path", "value": cli_config.file_path},
            ],
        )
        print_result(result, output_format=OutputFormat.JSON)
        raise typer.Exit()


@app.callback()
def default(
    version: bool = typer.Option(
        None,
        "--version",
        help="Shows version of ewa",
        callback=_version_callback,
        is_eager=True,
    ),
    info: bool = typer.Option(
        None,
        "--info",
        help="Shows information about ewa",
        callback=_info_callback,
    ),
    configuration_file: Path = typer.Option(
        None,
        "--config-file",
        help="Specifies the ewa configuration file that should be used",
        exists=True,
        dir_okay=False,
        is_eager=True,
        callback=_config_init_callback,
    ),
) -> None:
    """
    ewa - sparse linear classification by exponentially weighted aggregation
    """


register_commands_from_plugins(app, load_builtin_command_plugins())
