"""
Feasibility checks shared by solvers, repair and grading.

A sequence is feasible when every adjacent pair is compatible (gap covers
the travel time), no id repeats, and no two non-adjacent windows intersect.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from chain_of_scheduling.core.model import (
    Event,
    Instance,
    Schedule,
    Violation,
    ViolationKind,
    format_clock,
)
from chain_of_scheduling.core.travel import pair_compatible, travel_time, windows_overlap


def _travel_detail(instance: Instance, pred: Event, succ: Event) -> str:
    minutes = travel_time(instance.travel, pred, succ)
    return (
        f"{pred.id} ends {format_clock(pred.end)}, {succ.id} starts "
        f"{format_clock(succ.start)}, travel needs {minutes} min"
    )


def check_feasible(instance: Instance, event_ids: Sequence[str]) -> list[Violation]:
    """Return every violation in ``event_ids``; an empty list means feasible."""
    events = [instance.event(event_id) for event_id in event_ids]
    violations: list[Violation] = []

    for idx in range(len(events) - 1):
        pred, succ = events[idx], events[idx + 1]
        if not pair_compatible(instance.travel, pred, succ):
            violations.append(
                Violation(
                    kind=ViolationKind.TRAVEL,
                    first=idx,
                    second=idx + 1,
                    detail=_travel_detail(instance, pred, succ),
                )
            )

    first_seen: dict[str, int] = {}
    for idx, event in enumerate(events):
        if event.id in first_seen:
            violations.append(
                Violation(
                    kind=ViolationKind.DUPLICATE,
                    first=first_seen[event.id],
                    second=idx,
                    detail=f"{event.id} appears more than once",
                )
            )
        else:
            first_seen[event.id] = idx

    for i in range(len(events)):
        for j in range(i + 2, len(events)):
            a, b = events[i], events[j]
            if a.id == b.id:
                continue
            if windows_overlap(a, b):
                violations.append(
                    Violation(
                        kind=ViolationKind.OVERLAP,
                        first=i,
                        second=j,
                        detail=f"{a.id} [{a.window}] overlaps {b.id} [{b.window}]",
                    )
                )

    return violations


def is_feasible(instance: Instance, event_ids: Sequence[str]) -> bool:
    return not check_feasible(instance, event_ids)


def schedule_utility(instance: Instance, event_ids: Iterable[str]) -> float:
    """Left-to-right utility sum; every solver totals schedules this way."""
    total = 0.0
    for event_id in event_ids:
        total += instance.utility(event_id)
    return total


def make_schedule(instance: Instance, event_ids: Iterable[str]) -> Schedule:
    ids = tuple(event_ids)
    return Schedule(
        event_ids=ids,
        total_utility=schedule_utility(instance, ids),
        feasible=is_feasible(instance, ids),
    )


def time_order_key(event: Event) -> tuple[int, int, str]:
    return (event.start, event.end, event.id)
