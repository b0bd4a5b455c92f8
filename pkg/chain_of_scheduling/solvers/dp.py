"""
Exact top-k dynamic programming.

Events are sorted by start time and each state "schedule beginning at event
j" keeps the k best schedules that start there, linked to their tails.
Appending only depends on adjacent compatibility and non-negative travel
forces time order, so the k-best merge over all states is exact.

Utilities are compared as exact integer sums (see ``exact_weights``). Two
schedules in one state share their first event, so their id order is settled
by the first event of their tails, or by the tails' rank when both tails
come from the same state. Every state is therefore cut to exactly k entries,
ties included.
"""

from __future__ import annotations

from bisect import bisect_left, insort
import heapq
import logging
from typing import Optional

from chain_of_scheduling.core.feasibility import schedule_utility
from chain_of_scheduling.core.model import Instance, Schedule
from chain_of_scheduling.core.travel import pair_compatible
from chain_of_scheduling.solvers.ranking import TopKResult, exact_weights, validate_k

logger = logging.getLogger(__name__)

# (negated exact total, has tail, first tail id, tail rank, partial)
_Entry = tuple[int, int, str, int, "_Partial"]


class _Partial:
    """A schedule beginning at one event, linked to the schedule that follows it."""

    __slots__ = ("total", "event_id", "tail")

    def __init__(self, total: int, event_id: str, tail: Optional["_Partial"]) -> None:
        self.total = total
        self.event_id = event_id
        self.tail = tail

    @property
    def ids(self) -> tuple[str, ...]:
        ids = []
        node: Optional[_Partial] = self
        while node is not None:
            ids.append(node.event_id)
            node = node.tail
        return tuple(ids)


def solve_dp_topk(instance: Instance, k: int) -> TopKResult:
    """Return the k highest-utility feasible schedules (the empty one included)."""
    validate_k(k)

    order = sorted(instance.events, key=lambda event: (event.start, event.end, event.id))
    starts = [event.start for event in order]
    weights = exact_weights(instance.utilities)
    travel = instance.travel

    states: list[list[_Partial]] = [[] for _ in order]
    for j in range(len(order) - 1, -1, -1):
        event = order[j]
        weight = weights[event.id]
        best: list[_Entry] = [(-weight, 0, "", 0, _Partial(weight, event.id, None))]
        # Only events starting at or after our end can follow us.
        for i in range(bisect_left(starts, event.end), len(order)):
            if not pair_compatible(travel, event, order[i]):
                continue
            for rank, tail in enumerate(states[i]):
                total = weight + tail.total
                entry_key = (-total, 1, order[i].id, rank)
                # Tails are ranked, so later ones cannot do better.
                if len(best) == k and entry_key >= best[-1][:4]:
                    break
                insort(best, (-total, 1, order[i].id, rank, _Partial(total, event.id, tail)))
                if len(best) > k:
                    best.pop()
        states[j] = [entry[4] for entry in best]

    terminal: list[tuple[int, int, str, int, Optional[_Partial]]] = [
        (-partial.total, 1, partial.event_id, rank, partial)
        for state in states
        for rank, partial in enumerate(state)
    ]
    # The empty schedule sorts before any non-empty schedule of equal utility.
    terminal.append((0, 0, "", 0, None))
    top = heapq.nsmallest(k, terminal, key=lambda entry: entry[:4])
    chosen = [entry[4].ids if entry[4] is not None else () for entry in top]

    logger.debug(
        "DP top-%d over %d events: %d terminal partials", k, len(order), len(terminal)
    )
    return TopKResult.from_schedules(
        Schedule(
            event_ids=ids,
            total_utility=schedule_utility(instance, ids),
            feasible=True,
        )
        for ids in chosen
    )


__all__ = ["solve_dp_topk"]
