"""CLI configuration helpers."""

from __future__ import annotations

from dataclasses import dataclass
import logging
import os
from typing import Mapping, Optional

from chain_of_scheduling.core.errors import ConfigError
from chain_of_scheduling.solvers.ranking import validate_k

LOG_LEVELS = ("debug", "info", "warning", "error", "critical")
SUBCOMMANDS = (
    "solve",
    "oracle",
    "greedy",
    "ga",
    "verify",
    "repair",
    "trace",
    "emit-sft",
    "gen",
    "reduce",
    "bench",
    "grade",
)


@dataclass(frozen=True)
class RuntimeConfig:
    log_level: str

    @property
    def level(self) -> int:
        return getattr(logging, self.log_level.upper())


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    k: int = 3
    seed: Optional[int] = None
    output: Optional[str] = None
    pretty: bool = False

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"Unknown subcommand {self.subcommand!r}")
        validate_k(self.k)


def _normalize_level(value: str) -> str:
    level = value.strip().lower()
    if level not in LOG_LEVELS:
        raise ConfigError(f"Unknown log level {value!r}")
    return level


def load_runtime_config(
    env: Optional[Mapping[str, str]] = None,
    override: Optional[str] = None,
    default_level: str = "warning",
) -> RuntimeConfig:
    """Resolve the log level: explicit flag, then ``COS_LOG_LEVEL``, then default."""
    env = os.environ if env is None else env
    raw = override or env.get("COS_LOG_LEVEL") or default_level
    return RuntimeConfig(log_level=_normalize_level(raw))
