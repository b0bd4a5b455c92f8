"""
Chain-of-Scheduling trace construction.

Exploration takes the exact top-k schedules, verification recomputes each
total term by term, and integration picks the best verified candidate.
"""

from __future__ import annotations

from dataclasses import dataclass

from chain_of_scheduling.core.model import Instance, Schedule
from chain_of_scheduling.solvers.dp import solve_dp_topk
from chain_of_scheduling.solvers.ranking import TopKResult


@dataclass(frozen=True)
class VerificationEntry:
    index: int
    terms: tuple[float, ...]
    total: float


@dataclass(frozen=True)
class Integration:
    index: int
    schedule: Schedule


@dataclass(frozen=True)
class CosTrace:
    exploration: TopKResult
    verification: tuple[VerificationEntry, ...]
    integration: Integration


def verify_candidates(
    instance: Instance, exploration: TopKResult
) -> tuple[VerificationEntry, ...]:
    entries = []
    for index, schedule in enumerate(exploration.schedules):
        terms = tuple(instance.utilities[event_id] for event_id in schedule.event_ids)
        total = 0.0
        for term in terms:
            total += term
        entries.append(VerificationEntry(index=index, terms=terms, total=total))
    return tuple(entries)


def integrate(
    exploration: TopKResult, verification: tuple[VerificationEntry, ...]
) -> Integration:
    if not verification:
        return Integration(index=0, schedule=Schedule.empty())
    # max() keeps the first of equal totals, i.e. the lowest index.
    winner = max(verification, key=lambda entry: entry.total)
    return Integration(index=winner.index, schedule=exploration.schedules[winner.index])


def build_trace(instance: Instance, k: int) -> CosTrace:
    exploration = solve_dp_topk(instance, k)
    verification = verify_candidates(instance, exploration)
    return CosTrace(
        exploration=exploration,
        verification=verification,
        integration=integrate(exploration, verification),
    )
