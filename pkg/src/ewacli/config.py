from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import tomlkit
from ewacli.exception import InvalidConfigurationError, UnsupportedConfigSectionTypeError
from tomlkit import TOMLDocument
from tomlkit.exceptions import NonExistentKey, ParseError
from tomlkit.items import Table

log = logging.getLogger(__name__)

CONFIG_FILE = Path.home() / ".ewa" / "config.toml"
ENV_PREFIX = "EWA"
_THREADS_KEY = "threads"


class Empty:
    pass


class CliConfigManager:
    def __init__(self, file_path: Path = CONFIG_FILE):
        self.file_path = Path(file_path)
        self._document: TOMLDocument = TOMLDocument()

    def from_context(self, config_path_override: Optional[Path]):
        if config_path_override:
            self.file_path = Path(config_path_override)
        self.read_config()

    def read_config(self):
        if not self.file_path.exists():
            log.debug("Config file %s does not exist, using defaults", self.file_path)
            self._document = TOMLDocument()
            return
        try:
            self._document = tomlkit.parse(self.file_path.read_text())
        except ParseError as err:
            raise InvalidConfigurationError(f"Cannot parse {self.file_path}: {err}")

    def get_section(self, *path) -> dict:
        section = self._find_section(*path)
        if isinstance(section, (Table, TOMLDocument)):
            return self._merge_section_with_env(section, *path)
        raise UnsupportedConfigSectionTypeError(type(section))

    def get_section_or_empty(self, *path) -> dict:
        """Like get_section, but a missing section still picks up env overrides."""
        if self.section_exists(*path):
            return self.get_section(*path)
        return self._get_envs_for_path(*path)

    def section_exists(self, *path) -> bool:
        try:
            self._find_section(*path)
            return True
        except (NonExistentKey, KeyError):
            return False

    def get(self, *path, key: str, default: Optional[Any] = Empty) -> Any:
        """Looks for given key under nested path in toml file."""
        env_variable = self._get_env_value(*path, key=key)
        if env_variable:
            return env_variable
        try:
            return self.get_section(*path)[key]
        except (KeyError, NonExistentKey):
            if default is not Empty:
                return default
            raise

    def _find_section(self, *path) -> Union[TOMLDocument, Table]:
        section = self._document
        for part in path:
            section = section[part]
        return section

    def _merge_section_with_env(self, section: Table, *path) -> Dict[str, Any]:
        section_copy = section.copy()
        section_copy.update(self._get_envs_for_path(*path))
        return section_copy.unwrap()

    def _get_env_value(self, *path, key: str):
        env_variable_name = (
            f"{ENV_PREFIX}_" + "_".join(p.upper() for p in path) + f"_{key.upper()}"
        )
        return os.environ.get(env_variable_name)

    def _get_envs_for_path(self, *path) -> dict:
        env_variables_prefix = f"{ENV_PREFIX}_" + "_".join(p.upper() for p in path)
        return {
            k.replace(f"{env_variables_prefix}_", "").lower(): os.environ[k]
            for k in os.environ.keys()
            if k.startswith(f"{env_variables_prefix}_")
        }


def config_init(config_file: Optional[Path]):
    """
    Initializes the app configuration. Config provided via cli flag takes precedence.
    A missing file behaves like an empty one.
    """
    cli_config.from_context(config_path_override=config_file)


cli_config: CliConfigManager = CliConfigManager()


def get_default_threads() -> int:
    value = cli_config.get("options", key=_THREADS_KEY, default=1)
    try:
        threads = int(value)
    except (TypeError, ValueError):
        raise InvalidConfigurationError(f"options.threads must be an integer, got {value!r}")
    if threads < 1:
        raise InvalidConfigurationError(f"options.threads must be positive, got {threads}")
    return threads


def get_run_defaults() -> Dict[str, Any]:
    """The [run] section merged with EWA_RUN_* environment variables."""
    return cli_config.get_section_or_empty("run")
