"""Greedy baseline: take the highest-utility event that still fits."""

from __future__ import annotations

from bisect import bisect_left
import logging

from chain_of_scheduling.core.feasibility import make_schedule, time_order_key
from chain_of_scheduling.core.model import Event, Instance, Schedule
from chain_of_scheduling.core.travel import pair_compatible

logger = logging.getLogger(__name__)


def _fits(instance: Instance, chosen: list[Event], slot: int, event: Event) -> bool:
    # ``chosen`` is feasible and time-sorted, so compatibility with both
    # neighbours is equivalent to the whole sequence staying feasible.
    if slot > 0 and not pair_compatible(instance.travel, chosen[slot - 1], event):
        return False
    if slot < len(chosen) and not pair_compatible(instance.travel, event, chosen[slot]):
        return False
    return True


def solve_greedy(instance: Instance) -> Schedule:
    remaining = sorted(
        instance.events, key=lambda event: (-instance.utilities[event.id], event.id)
    )
    chosen: list[Event] = []
    keys: list[tuple[int, int, str]] = []

    added = True
    while added:
        added = False
        for position, event in enumerate(remaining):
            key = time_order_key(event)
            slot = bisect_left(keys, key)
            if _fits(instance, chosen, slot, event):
                chosen.insert(slot, event)
                keys.insert(slot, key)
                del remaining[position]
                added = True
                break

    logger.debug("Greedy picked %d of %d events", len(chosen), len(instance))
    return make_schedule(instance, (event.id for event in chosen))
