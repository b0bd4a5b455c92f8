"""JSON payloads printed by the CLI."""

from __future__ import annotations

from typing import Optional, Sequence

from pydantic import BaseModel, Field

from chain_of_scheduling.bench.report import BenchReport
from chain_of_scheduling.core.model import Schedule, Violation
from chain_of_scheduling.repair.repair import RepairOutcome
from chain_of_scheduling.solvers.ranking import TopKResult


class ScheduleResponse(BaseModel):
    event_ids: list[str]
    total_utility: float
    feasible: bool


class RankedScheduleResponse(ScheduleResponse):
    rank: int = Field(..., description="1-based rank, best first")


class TopKResponse(BaseModel):
    k: int
    candidates: list[RankedScheduleResponse]


class ViolationResponse(BaseModel):
    kind: str
    first: int = Field(..., description="Sequence index of the earlier event")
    second: int = Field(..., description="Sequence index of the later event")
    detail: str


class VerifyResponse(BaseModel):
    feasible: bool
    total_utility: float
    violations: list[ViolationResponse]


class SubstitutionResponse(BaseModel):
    removed_id: str
    inserted_id: Optional[str]
    position: int


class RepairResponse(BaseModel):
    strategy: str
    schedule: ScheduleResponse
    substitutions: list[SubstitutionResponse]
    utility_delta: float


class GradeResponse(BaseModel):
    sequence: list[str] = Field(..., description="Sequence extracted from the model output")
    source: str
    issues: list[str]
    conflict_rate: float
    conflicted: bool
    repair: RepairResponse


class BenchRowResponse(BaseModel):
    method: str
    utility: Optional[float]
    latency_ms: Optional[float]
    conflict_rate: Optional[float]
    schedule_conflict_rate: Optional[float]
    n: int
    errors: int


class BenchResponse(BaseModel):
    k: int
    repeats: int
    jobs: int
    style: str = Field(..., description="Trace style rendered for cos")
    strategy: str = Field(..., description="Post-processing for parser-fed methods")
    rows: list[BenchRowResponse]


class WrittenResponse(BaseModel):
    paths: list[str] = Field(default_factory=list)
    records: Optional[int] = None


def schedule_response(schedule: Schedule) -> ScheduleResponse:
    return ScheduleResponse(
        event_ids=list(schedule.event_ids),
        total_utility=schedule.total_utility,
        feasible=schedule.feasible,
    )


def topk_response(result: TopKResult, k: int) -> TopKResponse:
    return TopKResponse(
        k=k,
        candidates=[
            RankedScheduleResponse(
                rank=candidate.rank,
                event_ids=list(candidate.schedule.event_ids),
                total_utility=candidate.schedule.total_utility,
                feasible=candidate.schedule.feasible,
            )
            for candidate in result.candidates
        ],
    )


def violation_responses(violations: Sequence[Violation]) -> list[ViolationResponse]:
    return [
        ViolationResponse(
            kind=violation.kind.value,
            first=violation.first,
            second=violation.second,
            detail=violation.detail,
        )
        for violation in violations
    ]


def repair_response(outcome: RepairOutcome, strategy: str) -> RepairResponse:
    return RepairResponse(
        strategy=strategy,
        schedule=schedule_response(outcome.schedule),
        substitutions=[
            SubstitutionResponse(
                removed_id=item.removed_id,
                inserted_id=item.inserted_id,
                position=item.position,
            )
            for item in outcome.substitutions
        ],
        utility_delta=outcome.utility_delta,
    )


def bench_response(report: BenchReport) -> BenchResponse:
    return BenchResponse(
        k=report.k,
        repeats=report.repeats,
        jobs=report.jobs,
        style=report.style,
        strategy=report.strategy,
        rows=[
            BenchRowResponse(
                method=row.method,
                utility=row.utility,
                latency_ms=row.latency_ms,
                conflict_rate=row.conflict_rate,
                schedule_conflict_rate=row.schedule_conflict_rate,
                n=row.n,
                errors=row.errors,
            )
            for row in report.rows
        ],
    )
