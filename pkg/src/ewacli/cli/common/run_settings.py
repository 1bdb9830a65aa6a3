from __future__ import annotations

import logging
from typing import Any, Mapping, Optional

from ewacli.config import get_default_threads, get_run_defaults
from ewacli.engine.run_config import RunConfig

log = logging.getLogger(__name__)


def resolve_run_config(
    base: Optional[RunConfig] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    **flags,
) -> RunConfig:
    """
    Built-in defaults (or `base`), overridden by the [run] config section and
    EWA_RUN_* variables, then by `overrides` (for example a benchmark
    definition), then by the flags that were given (not None).
    """
    configured = get_run_defaults()
    if configured:
        log.debug("Run settings from configuration: %s", sorted(configured))
    cfg = (base or RunConfig()).merged(configured)
    if overrides:
        cfg = cfg.merged(overrides)
    return cfg.replace(**flags)


def resolve_workers(flag: Optional[int]) -> int:
    return flag if flag is not None else get_default_threads()
