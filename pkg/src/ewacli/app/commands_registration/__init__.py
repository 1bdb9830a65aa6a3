from dataclasses import dataclass

from ewacli.api.plugin.command import CommandSpec


@dataclass
class LoadedCommandPlugin:
    plugin_name: str
    command_spec: CommandSpec
