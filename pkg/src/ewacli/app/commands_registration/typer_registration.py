import logging
from typing import List

from ewacli.api.plugin.command import CommandSpec, CommandType
from ewacli.app.commands_registration import LoadedCommandPlugin
from ewacli.cli.exception_logging import exception_logging
from typer import Typer
from typer.core import TyperGroup

log = logging.getLogger(__name__)
log_exception = exception_logging(log)


class TyperCommandsRegistration:
    """Attaches the commands of loaded plugins to the main typer."""

    def __init__(self, main_typer: Typer, plugins: List[LoadedCommandPlugin]):
        self._main_typer = main_typer
        self._plugins = plugins
        self._registered_names: List[str] = []

    def register_commands(self):
        for plugin in self._plugins:
            try:
                self._add_plugin_to_typer(plugin.command_spec)
            except Exception as ex:
                log_exception(
                    f"Cannot register plugin [{plugin.plugin_name}]: {ex.__str__()}", ex
                )

    def _add_plugin_to_typer(self, command_spec: CommandSpec) -> None:
        if command_spec.parent_command_path.path_segments:
            raise RuntimeError(
                f"Cannot add command [{command_spec.full_command_path}]: "
                "only top-level commands are supported."
            )
        self._validate_command_spec(command_spec)
        if command_spec.command_type == CommandType.SINGLE_COMMAND:
            self._main_typer.registered_commands.extend(
                command_spec.typer_instance.registered_commands
            )
        else:
            self._main_typer.add_typer(command_spec.typer_instance)
        self._registered_names.append(command_spec.command.name)

    def _validate_command_spec(self, command_spec: CommandSpec) -> None:
        command = command_spec.command
        command_type = command_spec.command_type
        is_typer_group = isinstance(command, TyperGroup)
        if command.name in self._registered_names:
            raise RuntimeError(
                f"Cannot add command [{command_spec.full_command_path}] because it already exists."
            )
        if command_type == CommandType.SINGLE_COMMAND and is_typer_group:
            raise RuntimeError(
                f"Cannot add command [{command_spec.full_command_path}] "
                + f"because its command type is {CommandType.SINGLE_COMMAND} "
                + f"while its implementation contains elements "
                + f"making it a TyperGroup ({CommandType.COMMAND_GROUP}) "
                + f"(a callback or multiple nested commands)."
            )
        if command_type == CommandType.COMMAND_GROUP and not is_typer_group:
            raise RuntimeError(
                f"Cannot add command [{command_spec.full_command_path}] "
                + f"because its command type is {CommandType.COMMAND_GROUP} "
                + f"while its implementation is not a TyperGroup."
            )


def register_commands_from_plugins(main_typer: Typer, plugins: List[LoadedCommandPlugin]) -> None:
    TyperCommandsRegistration(main_typer, plugins).register_commands()
