from ewacli.api.plugin.command import (
    EWA_ROOT_COMMAND_PATH,
    CommandSpec,
    CommandType,
    plugin_hook_impl,
)
from ewacli.cli.fit import commands


@plugin_hook_impl
def command_spec():
    return CommandSpec(
        parent_command_path=EWA_ROOT_COMMAND_PATH,
        command_type=CommandType.SINGLE_COMMAND,
        typer_instance=commands.app,
    )
