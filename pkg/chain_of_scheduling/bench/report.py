"""Metric aggregation and CSV/markdown report writers."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from statistics import fmean
from typing import TYPE_CHECKING, Optional, Sequence, TextIO

if TYPE_CHECKING:
    from chain_of_scheduling.bench.runner import Method, RunRecord

COLUMNS = ("method", "utility", "latency_ms", "conflict_rate", "n")
METHOD_GROUPS = (
    ("Combinatorial optimization", ("oracle", "dp", "greedy", "ga")),
    ("Chain of Scheduling", ("cos", "external")),
)


class ReportFormat(str, Enum):
    CSV = "csv"
    MARKDOWN = "markdown"


@dataclass(frozen=True)
class BenchRow:
    method: str
    utility: Optional[float]
    latency_ms: Optional[float]
    conflict_rate: Optional[float]
    schedule_conflict_rate: Optional[float]
    n: int
    errors: int


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    k: int = 3
    repeats: int = 1
    jobs: int = 1
    style: str = "full"
    strategy: str = "local-search"


def _mean(values: list[float]) -> Optional[float]:
    return fmean(values) if values else None


def aggregate(
    records: Sequence["RunRecord"],
    methods: Sequence["Method"],
    repeats: int = 1,
    jobs: int = 1,
    k: int = 3,
    style: str = "full",
    strategy: str = "local-search",
) -> BenchReport:
    """Average utility, latency and conflict metrics per method."""
    rows = []
    for method in methods:
        mine = [record for record in records if record.method == method]
        ok = [record for record in mine if record.error is None]
        rates = [record.conflicts for record in ok if record.conflicts is not None]
        conflicted = [
            1.0 if record.conflicted else 0.0
            for record in ok
            if record.conflicted is not None
        ]
        rows.append(
            BenchRow(
                method=method.value,
                utility=_mean([record.utility for record in ok]),
                latency_ms=_mean([record.latency_ms for record in ok]),
                conflict_rate=_mean(rates) if method.parser_fed else None,
                schedule_conflict_rate=_mean(conflicted) if method.parser_fed else None,
                n=len({record.instance_id for record in ok}),
                errors=len(mine) - len(ok),
            )
        )
    return BenchReport(
        rows=tuple(rows),
        k=k,
        repeats=repeats,
        jobs=jobs,
        style=style,
        strategy=strategy,
    )


def _cells(row: BenchRow) -> list[str]:
    def number(value: Optional[float], digits: int) -> str:
        return "" if value is None else f"{value:.{digits}f}"

    return [
        row.method,
        number(row.utility, 4),
        number(row.latency_ms, 3),
        number(row.conflict_rate, 4),
        str(row.n),
    ]


def _write_csv(report: BenchReport, sink: TextIO) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in report.rows:
        writer.writerow(_cells(row))


def _group_of(method: str) -> str:
    for title, members in METHOD_GROUPS:
        if method in members:
            return title
    return "Other"


def _write_markdown(report: BenchReport, sink: TextIO) -> None:
    sink.write("| " + " | ".join(COLUMNS) + " |\n")
    sink.write("|" + "|".join(["---"] * len(COLUMNS)) + "|\n")

    groups: dict[str, list[BenchRow]] = {}
    for row in report.rows:
        groups.setdefault(_group_of(row.method), []).append(row)

    for title, rows in groups.items():
        sink.write(f"| **{title}** |" + " |" * (len(COLUMNS) - 1) + "\n")
        for row in rows:
            cells = [cell if cell else "-" for cell in _cells(row)]
            sink.write("| " + " | ".join(cells) + " |\n")


def write_report(report: BenchReport, fmt: ReportFormat, sink: TextIO) -> None:
    if fmt is ReportFormat.CSV:
        _write_csv(report, sink)
    else:
        _write_markdown(report, sink)
