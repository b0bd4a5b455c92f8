"""
Conflict diagnosis and schedule post-processing.

``repair_schedule`` anchors on the first conflicted adjacent pair, keeps the
predecessor and replaces the successor with the best unused event that fits
between its neighbours, or deletes the successor when nothing fits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging
from typing import Optional, Sequence

from chain_of_scheduling.core.feasibility import check_feasible, make_schedule, schedule_utility
from chain_of_scheduling.core.model import Event, Instance, Schedule, ViolationKind
from chain_of_scheduling.core.travel import pair_compatible

logger = logging.getLogger(__name__)


class RepairStrategy(str, Enum):
    LOCAL_SEARCH = "local-search"
    DROP = "drop"


@dataclass(frozen=True)
class Substitution:
    removed_id: str
    inserted_id: Optional[str]
    position: int


@dataclass(frozen=True)
class RepairOutcome:
    schedule: Schedule
    substitutions: tuple[Substitution, ...]
    utility_delta: float


def conflict_rate(instance: Instance, event_ids: Sequence[str]) -> float:
    """Share of sequence positions involved in at least one violation."""
    if not event_ids:
        return 0.0
    conflicted: set[int] = set()
    for violation in check_feasible(instance, event_ids):
        conflicted.add(violation.first)
        conflicted.add(violation.second)
    return len(conflicted) / len(event_ids)


def schedule_conflicted(instance: Instance, event_ids: Sequence[str]) -> bool:
    return bool(check_feasible(instance, event_ids))


def _deduplicate(
    event_ids: Sequence[str], substitutions: list[Substitution]
) -> list[str]:
    seen: set[str] = set()
    kept: list[str] = []
    for position, event_id in enumerate(event_ids):
        if event_id in seen:
            substitutions.append(Substitution(event_id, None, position))
            continue
        seen.add(event_id)
        kept.append(event_id)
    return kept


def _first_adjacent_violation(instance: Instance, sequence: list[str]) -> Optional[int]:
    violations = check_feasible(instance, sequence)
    if not violations:
        return None
    adjacent = [v.first for v in violations if v.kind is ViolationKind.TRAVEL]
    if adjacent:
        return min(adjacent)
    # Without duplicates, all-adjacent-compatible implies feasible.
    raise AssertionError(f"Non-adjacent violations without adjacent ones: {violations}")


def _best_substitute(
    instance: Instance, anchor: Event, follower: Optional[Event], used: set[str]
) -> Optional[Event]:
    best: Optional[Event] = None
    for candidate in instance.events:
        if candidate.id in used:
            continue
        if not pair_compatible(instance.travel, anchor, candidate):
            continue
        if follower is not None and not pair_compatible(instance.travel, candidate, follower):
            continue
        if best is None or (-instance.utilities[candidate.id], candidate.id) < (
            -instance.utilities[best.id],
            best.id,
        ):
            best = candidate
    return best


def repair_schedule(instance: Instance, event_ids: Sequence[str]) -> RepairOutcome:
    """Turn an arbitrary id sequence into a feasible schedule by local search."""
    claimed = schedule_utility(instance, event_ids)
    substitutions: list[Substitution] = []
    sequence = _deduplicate(event_ids, substitutions)

    while (idx := _first_adjacent_violation(instance, sequence)) is not None:
        anchor = instance.event(sequence[idx])
        removed = sequence[idx + 1]
        follower = (
            instance.event(sequence[idx + 2]) if idx + 2 < len(sequence) else None
        )
        substitute = _best_substitute(instance, anchor, follower, set(sequence))

        if substitute is None:
            del sequence[idx + 1]
            substitutions.append(Substitution(removed, None, idx + 1))
            logger.debug("Repair dropped %s after anchor %s", removed, anchor.id)
        else:
            sequence[idx + 1] = substitute.id
            substitutions.append(Substitution(removed, substitute.id, idx + 1))
            logger.debug(
                "Repair replaced %s with %s after anchor %s",
                removed,
                substitute.id,
                anchor.id,
            )

    schedule = make_schedule(instance, sequence)
    return RepairOutcome(
        schedule=schedule,
        substitutions=tuple(substitutions),
        utility_delta=schedule.total_utility - claimed,
    )


def strip_conflicts(instance: Instance, event_ids: Sequence[str]) -> RepairOutcome:
    """Drop every event incompatible with the last kept one, no substitution."""
    claimed = schedule_utility(instance, event_ids)
    substitutions: list[Substitution] = []
    sequence = _deduplicate(event_ids, substitutions)

    kept: list[str] = []
    for position, event_id in enumerate(sequence):
        event = instance.event(event_id)
        if kept and not pair_compatible(instance.travel, instance.event(kept[-1]), event):
            substitutions.append(Substitution(event_id, None, position))
            continue
        kept.append(event_id)

    schedule = make_schedule(instance, kept)
    return RepairOutcome(
        schedule=schedule,
        substitutions=tuple(substitutions),
        utility_delta=schedule.total_utility - claimed,
    )


def post_process(
    instance: Instance,
    event_ids: Sequence[str],
    strategy: RepairStrategy = RepairStrategy.LOCAL_SEARCH,
) -> RepairOutcome:
    if strategy is RepairStrategy.DROP:
        return strip_conflicts(instance, event_ids)
    return repair_schedule(instance, event_ids)
