"""
Benchmark runner: executes methods on instances, times them and verifies
their output.

Parser-fed methods (``cos`` and ``external``) go through the grading path:
parse the trace text, record the conflict rate, post-process, then score.
A ``CosVariant`` selects the trace style and post-processing strategy so
ablations run through the same path.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
import logging
import time
from typing import Mapping, Optional, Sequence, TextIO

from pydantic import BaseModel

from chain_of_scheduling.bench.report import BenchReport, aggregate
from chain_of_scheduling.core.errors import ConfigError
from chain_of_scheduling.core.feasibility import is_feasible
from chain_of_scheduling.core.model import Instance, Schedule
from chain_of_scheduling.costrace.parse import parse_trace
from chain_of_scheduling.costrace.render import TraceStyle, render_trace
from chain_of_scheduling.costrace.trace import build_trace
from chain_of_scheduling.repair.repair import RepairStrategy, conflict_rate, post_process
from chain_of_scheduling.solvers import GaConfig, Solver, solve

logger = logging.getLogger(__name__)


class Method(str, Enum):
    ORACLE = "oracle"
    DP = "dp"
    GREEDY = "greedy"
    GA = "ga"
    COS = "cos"
    EXTERNAL = "external"

    @property
    def parser_fed(self) -> bool:
        return self in (Method.COS, Method.EXTERNAL)


@dataclass(frozen=True)
class RunRecord:
    method: Method
    instance_id: str
    repeat: int
    utility: Optional[float] = None
    latency_ms: Optional[float] = None
    conflicts: Optional[float] = None
    conflicted: Optional[bool] = None
    error: Optional[str] = None


class RunLogEntry(BaseModel):
    method: str
    instance_id: str
    utility: Optional[float]
    latency_ms: Optional[float]
    conflicts: Optional[float]


@dataclass(frozen=True)
class CosVariant:
    """How parser-fed methods render and post-process their traces."""

    style: TraceStyle = TraceStyle.FULL
    strategy: RepairStrategy = RepairStrategy.LOCAL_SEARCH
    seed: int = 0


def _grade_text(
    instance: Instance, text: str, strategy: RepairStrategy
) -> tuple[Schedule, float]:
    parsed = parse_trace(text, instance)
    rate = conflict_rate(instance, parsed.sequence)
    return post_process(instance, parsed.sequence, strategy).schedule, rate


def _run_cell(
    method: Method,
    instance: Instance,
    repeat: int,
    k: int,
    ga_config: Optional[GaConfig],
    model_output: Optional[str],
    variant: CosVariant,
    seed: int,
) -> RunRecord:
    conflicts: Optional[float] = None
    try:
        began = time.perf_counter()
        if method is Method.COS:
            text = render_trace(build_trace(instance, k), instance, variant.style, seed)
            schedule, conflicts = _grade_text(instance, text, variant.strategy)
        elif method is Method.EXTERNAL:
            if model_output is None:
                raise LookupError(f"No model output for instance {instance.label!r}")
            schedule, conflicts = _grade_text(instance, model_output, variant.strategy)
        else:
            schedule = solve(instance, Solver(method.value), k=k, ga_config=ga_config)
        latency_ms = (time.perf_counter() - began) * 1000.0

        if not is_feasible(instance, schedule.event_ids):
            raise AssertionError(f"{method.value} returned an infeasible schedule")
    except Exception as exc:
        logger.warning("%s failed on %s: %s", method.value, instance.label, exc)
        return RunRecord(
            method=method, instance_id=instance.label, repeat=repeat, error=str(exc)
        )

    return RunRecord(
        method=method,
        instance_id=instance.label,
        repeat=repeat,
        utility=schedule.total_utility,
        latency_ms=latency_ms,
        conflicts=conflicts,
        conflicted=None if conflicts is None else conflicts > 0,
    )


def run_records(
    instances: Sequence[Instance],
    methods: Sequence[Method],
    k: int = 3,
    repeats: int = 1,
    ga_config: Optional[GaConfig] = None,
    model_outputs: Optional[Mapping[str, str]] = None,
    jobs: int = 1,
    variant: Optional[CosVariant] = None,
) -> list[RunRecord]:
    """
    Run every (method, instance, repeat) cell, in a stable order.

    The j-th (instance, repeat) pair of a method renders with
    ``variant.seed + j``, so seeded trace styles are reproducible.
    """
    model_outputs = model_outputs or {}
    variant = variant or CosVariant()
    pairs = [(instance, repeat) for instance in instances for repeat in range(repeats)]
    cells = [
        (
            method,
            instance,
            repeat,
            k,
            ga_config,
            model_outputs.get(instance.label),
            variant,
            variant.seed + position,
        )
        for method in methods
        for position, (instance, repeat) in enumerate(pairs)
    ]
    logger.info(
        "Benchmarking %d methods x %d instances x %d repeats (jobs=%d, style=%s, strategy=%s)",
        len(methods),
        len(instances),
        repeats,
        jobs,
        variant.style.value,
        variant.strategy.value,
    )

    if jobs <= 1:
        return [_run_cell(*cell) for cell in cells]

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_cell, *cell) for cell in cells]
        return [future.result() for future in futures]


def run_bench(
    instances: Sequence[Instance],
    methods: Sequence[Method],
    k: int = 3,
    repeats: int = 1,
    ga_config: Optional[GaConfig] = None,
    model_outputs: Optional[Mapping[str, str]] = None,
    jobs: int = 1,
    run_log: Optional[TextIO] = None,
    variant: Optional[CosVariant] = None,
) -> BenchReport:
    """Run the benchmark and aggregate per-method means."""
    if not methods:
        raise ConfigError("At least one method is required")
    if not instances:
        raise ConfigError("At least one instance is required")
    if repeats < 1:
        raise ConfigError(f"repeats must be positive, got {repeats}")
    variant = variant or CosVariant()
    if variant.seed < 0:
        raise ConfigError(f"seed must be non-negative, got {variant.seed}")

    records = run_records(
        instances, methods, k, repeats, ga_config, model_outputs, jobs, variant
    )
    if run_log is not None:
        write_run_log(records, run_log)
    return aggregate(
        records,
        methods,
        repeats=repeats,
        jobs=jobs,
        k=k,
        style=variant.style.value,
        strategy=variant.strategy.value,
    )


def write_run_log(records: Sequence[RunRecord], sink: TextIO) -> None:
    for record in records:
        entry = RunLogEntry(
            method=record.method.value,
            instance_id=record.instance_id,
            utility=record.utility,
            latency_ms=record.latency_ms,
            conflicts=record.conflicts,
        )
        sink.write(entry.model_dump_json())
        sink.write("\n")
