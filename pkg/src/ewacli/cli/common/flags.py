from __future__ import annotations

from typing import Any, Callable

import typer
from ewacli.cli.common.cli_global_context import cli_context_manager
from ewacli.output.formats import OutputFormat

DEFAULT_CONTEXT_SETTINGS = {"help_option_names": ["--help", "-h"]}

_CLI_BEHAVIOUR = "Global configuration"
_MODEL_SECTION = "Model"
_SAMPLER_SECTION = "Sampler"


def _callback(provide_setter: Callable[[], Callable[[Any], Any]]):
    def callback(value):
        set_value = provide_setter()
        set_value(value)
        return value

    return callback


OutputFormatOption = typer.Option(
    OutputFormat.TABLE.value,
    "--format",
    help="Specifies the output format.",
    case_sensitive=False,
    callback=_callback(lambda: cli_context_manager.set_output_format),
    rich_help_panel=_CLI_BEHAVIOUR,
)

VerboseOption = typer.Option(
    False,
    "--verbose",
    "-v",
    help="Displays log entries for log levels `info` and higher.",
    callback=_callback(lambda: cli_context_manager.set_verbose),
    is_flag=True,
    rich_help_panel=_CLI_BEHAVIOUR,
)

DebugOption = typer.Option(
    False,
    "--debug",
    help="Displays log entries for log levels `debug` and higher and shows tracebacks of unexpected errors.",
    callback=_callback(lambda: cli_context_manager.set_enable_tracebacks),
    is_flag=True,
    rich_help_panel=_CLI_BEHAVIOUR,
)

# Run-setting flags default to None so that config file and environment values
# apply unless the flag is given.
SeedOption = typer.Option(
    None, "--seed", help="Master random seed. Default: 0.", show_default=False
)

LambdaOption = typer.Option(
    None,
    "--lambda",
    "--lam",
    help="Inverse temperature of the pseudo-posterior. Default: 1.",
    show_default=False,
    rich_help_panel=_MODEL_SECTION,
)

RiskScaleOption = typer.Option(
    None,
    "--risk-scale",
    help="sum: lambda multiplies the summed losses (lambda=1 is the logistic likelihood); mean: lambda multiplies the averaged risk. Default: sum.",
    show_default=False,
    rich_help_panel=_MODEL_SECTION,
)

TauOption = typer.Option(
    None,
    "--tau",
    help="Scale of the sparsity prior. Default: 1.",
    show_default=False,
    rich_help_panel=_MODEL_SECTION,
)

C1Option = typer.Option(
    None,
    "--c1",
    help="Radius of the l1 ball the prior is restricted to. Default: 1e6.",
    show_default=False,
    rich_help_panel=_MODEL_SECTION,
)

StepSizeOption = typer.Option(
    None,
    "--step-size",
    help="Langevin step size. Default: searched and adapted for MALA, a tenth of the adapted MALA step for LMC.",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

IterationsOption = typer.Option(
    None,
    "--n-iter",
    help="Chain length. Default: 30000.",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

BurnInOption = typer.Option(
    None,
    "--burn-in",
    help="Iterations discarded before summarising the chain. Default: 5000.",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

AdaptOption = typer.Option(
    None,
    "--adapt/--no-adapt",
    help="Adapt the MALA step size during burn-in. Default: on.",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

ThinOption = typer.Option(
    None,
    "--thin",
    help="Keep every k-th draw. Default: 1.",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

InitOption = typer.Option(
    None,
    "--init",
    help="Chain starting point: zero, lasso, or auto (LMC at the Lasso, MALA at zero).",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

StochasticOption = typer.Option(
    None,
    "--stochastic/--posterior-mean",
    help="Use one random posterior draw instead of the posterior mean as the classifier.",
    show_default=False,
    rich_help_panel=_SAMPLER_SECTION,
)

FoldsOption = typer.Option(
    None,
    "--folds",
    help="Cross-validation folds for the Lasso. Default: 10.",
    show_default=False,
)

CvMeasureOption = typer.Option(
    None,
    "--cv-measure",
    help="Held-out score of the Lasso cross-validation: misclassification or deviance. Default: misclassification, deviance in bench.",
    show_default=False,
)

InterceptOption = typer.Option(
    None,
    "--intercept/--no-intercept",
    help="Fit an unpenalised intercept in the Lasso.",
    show_default=False,
)

WorkersOption = typer.Option(
    None,
    "--workers",
    "-j",
    help="Parallel workers. Default: options.threads from the config file, or 1.",
    show_default=False,
)


def data_option(help_text: str = "Dataset CSV with a label column `y`."):
    return typer.Option(
        ...,
        "--data",
        "-d",
        help=help_text,
        exists=True,
        dir_okay=False,
        readable=True,
    )


def output_option(default: str, help_text: str):
    return typer.Option(default, "--output", "-o", help=help_text)
