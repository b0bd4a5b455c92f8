"""Bench layer: instance generation, DHP reduction, benchmark runner and reports."""

from chain_of_scheduling.bench.generator import (
    GenConfig,
    GenConfigPayload,
    generate_instance,
    generate_instances,
    load_gen_config,
)
from chain_of_scheduling.bench.reduction import (
    DigraphPayload,
    graph_from_payload,
    has_hamiltonian_path,
    load_digraph,
    random_digraph,
    reduce_dhp,
)
from chain_of_scheduling.bench.report import (
    BenchReport,
    BenchRow,
    ReportFormat,
    aggregate,
    write_report,
)
from chain_of_scheduling.bench.runner import (
    CosVariant,
    Method,
    RunRecord,
    run_bench,
    run_records,
    write_run_log,
)

__all__ = [
    "BenchReport",
    "BenchRow",
    "CosVariant",
    "DigraphPayload",
    "GenConfig",
    "GenConfigPayload",
    "Method",
    "ReportFormat",
    "RunRecord",
    "aggregate",
    "generate_instance",
    "generate_instances",
    "graph_from_payload",
    "has_hamiltonian_path",
    "load_digraph",
    "load_gen_config",
    "random_digraph",
    "reduce_dhp",
    "run_bench",
    "run_records",
    "write_report",
    "write_run_log",
]
