#!/usr/bin/env python3
"""
E2E: generate -> trace -> SFT dataset -> parse -> repair -> bench

Runs the whole toolkit on a handful of seeded instances and checks that
every parsed trace grades back to the DP optimum. Logs each stage.
"""

from __future__ import annotations

from dataclasses import dataclass
import io
import json
import logging
import sys

from chain_of_scheduling.bench.generator import GenConfig, generate_instances
from chain_of_scheduling.bench.report import ReportFormat, write_report
from chain_of_scheduling.bench.runner import Method, run_bench
from chain_of_scheduling.cli.config import load_runtime_config
from chain_of_scheduling.core.model import UTILITY_TOLERANCE, Instance
from chain_of_scheduling.costrace.dataset import emit_sft_dataset
from chain_of_scheduling.costrace.parse import parse_trace
from chain_of_scheduling.repair.repair import conflict_rate, repair_schedule
from chain_of_scheduling.solvers import GaConfig, solve_dp_topk

logger = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    n_events: int = 25
    instances: int = 5
    k: int = 3
    seed: int = 7
    generations: int = 50


def _check_dataset(instances: list[Instance], dataset: str, k: int) -> int:
    """Parse every completion back and compare with the DP optimum."""
    mismatches = 0
    for instance, line in zip(instances, dataset.splitlines()):
        completion = json.loads(line)["completion"]
        parsed = parse_trace(completion, instance)
        rate = conflict_rate(instance, parsed.sequence)
        repaired = repair_schedule(instance, parsed.sequence).schedule
        best = solve_dp_topk(instance, k).best

        same = repaired.event_ids == best.event_ids and abs(
            repaired.total_utility - best.total_utility
        ) <= UTILITY_TOLERANCE
        logger.info(
            "  %s: %d events, utility %.4f, conflict rate %.2f %s",
            instance.label,
            len(repaired),
            repaired.total_utility,
            rate,
            "OK" if same else "MISMATCH",
        )
        if not same:
            mismatches += 1
    return mismatches


def run_pipeline(config: PipelineConfig) -> int:
    logger.info("=" * 60)
    logger.info("GENERATING INSTANCES")
    logger.info("=" * 60)
    instances = generate_instances(
        GenConfig(n_events=config.n_events, seed=config.seed), config.instances
    )
    logger.info("Generated %d instances of %d events", len(instances), config.n_events)

    logger.info("=" * 60)
    logger.info("EMITTING SFT DATASET")
    logger.info("=" * 60)
    buffer = io.StringIO()
    count = emit_sft_dataset(instances, config.k, buffer)
    logger.info("Emitted %d records", count)

    logger.info("=" * 60)
    logger.info("GRADING COMPLETIONS")
    logger.info("=" * 60)
    mismatches = _check_dataset(instances, buffer.getvalue(), config.k)

    logger.info("=" * 60)
    logger.info("BENCHMARK")
    logger.info("=" * 60)
    report = run_bench(
        instances,
        [Method.DP, Method.GREEDY, Method.GA, Method.COS],
        k=config.k,
        ga_config=GaConfig(generations=config.generations, seed=config.seed),
    )
    table = io.StringIO()
    write_report(report, ReportFormat.MARKDOWN, table)
    logger.info("Results:\n%s", table.getvalue())

    failed = [row.method for row in report.rows if row.errors]
    if failed:
        logger.error("Methods with errors: %s", ", ".join(failed))
    if mismatches:
        logger.error("%d completions did not grade back to the DP optimum", mismatches)
    return 1 if failed or mismatches else 0


def main() -> int:
    runtime = load_runtime_config(default_level="info")
    logging.basicConfig(
        level=runtime.level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    logger.info("=" * 60)
    logger.info("E2E: Chain of Scheduling pipeline")
    logger.info("=" * 60)

    config = PipelineConfig()
    logger.info(
        "Config: n_events=%d, instances=%d, k=%d, seed=%d",
        config.n_events,
        config.instances,
        config.k,
        config.seed,
    )

    status = run_pipeline(config)
    logger.info("Done!" if status == 0 else "Failed.")
    return status


if __name__ == "__main__":
    sys.exit(main())
