"""Command-line interface for the scheduling toolkit."""

from chain_of_scheduling.cli.app import build_parser, main
from chain_of_scheduling.cli.config import CliConfig, RuntimeConfig, load_runtime_config

__all__ = ["CliConfig", "RuntimeConfig", "build_parser", "load_runtime_config", "main"]
