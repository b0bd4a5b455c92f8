"""Exhaustive enumeration of feasible schedules (the ground-truth oracle)."""

from __future__ import annotations

import heapq
import logging
from typing import Iterator

from chain_of_scheduling.core.errors import SizeGuardError
from chain_of_scheduling.core.model import Event, Instance, Schedule
from chain_of_scheduling.core.travel import pair_compatible
from chain_of_scheduling.solvers.ranking import TopKResult, exact_weights, rank_key, validate_k

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_EVENTS = 16


def iter_feasible_sequences(instance: Instance) -> Iterator[tuple[float, tuple[str, ...]]]:
    """Yield ``(utility, ids)`` for every feasible sequence, the empty one first."""
    order = sorted(instance.events, key=lambda event: (event.end, event.start, event.id))
    travel = instance.travel
    utilities = instance.utilities

    def extend(
        last: int, prefix: tuple[str, ...], total: float
    ) -> Iterator[tuple[float, tuple[str, ...]]]:
        # A compatible successor always ends strictly later, so only later
        # positions in end order need to be tried.
        for nxt in range(last + 1, len(order)):
            event: Event = order[nxt]
            if last >= 0 and not pair_compatible(travel, order[last], event):
                continue
            ids = prefix + (event.id,)
            utility = total + utilities[event.id]
            yield utility, ids
            yield from extend(nxt, ids, utility)

    yield 0.0, ()
    yield from extend(-1, (), 0.0)


def solve_exhaustive(instance: Instance, k: int, allow_large: bool = False) -> TopKResult:
    """Enumerate every feasible sequence and return the k best."""
    validate_k(k)
    if len(instance) > MAX_EXHAUSTIVE_EVENTS and not allow_large:
        raise SizeGuardError(
            f"Exhaustive search is limited to {MAX_EXHAUSTIVE_EVENTS} events, "
            f"instance has {len(instance)}"
        )

    weights = exact_weights(instance.utilities)
    best = heapq.nsmallest(
        k,
        iter_feasible_sequences(instance),
        key=lambda item: rank_key(sum(weights[event_id] for event_id in item[1]), item[1]),
    )
    logger.debug("Exhaustive top-%d over %d events", k, len(instance))
    return TopKResult.from_schedules(
        Schedule(event_ids=ids, total_utility=utility, feasible=True)
        for utility, ids in best
    )
