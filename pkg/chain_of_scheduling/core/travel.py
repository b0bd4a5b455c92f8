"""Travel times and the adjacent-pair compatibility rule."""

from __future__ import annotations

import math

from chain_of_scheduling.core.errors import TravelLookupError
from chain_of_scheduling.core.model import Event, TravelMode, TravelModel


def travel_time(model: TravelModel, a: Event, b: Event) -> int:
    """Whole minutes needed to get from ``a``'s venue to ``b``'s venue."""
    if a.id == b.id:
        return 0

    if model.mode is TravelMode.PLANAR:
        if a.location == b.location:
            return 0
        distance = math.hypot(a.location.x - b.location.x, a.location.y - b.location.y)
        # Round up: never certify a gap the real trip would not fit into.
        return math.ceil(distance / model.speed)

    row = (model.matrix or {}).get(a.id)
    if row is None or b.id not in row:
        raise TravelLookupError(a.id, b.id)
    return int(row[b.id])


def pair_compatible(model: TravelModel, pred: Event, succ: Event) -> bool:
    """True iff ``succ`` can directly follow ``pred``."""
    gap = succ.start - pred.end
    if gap < 0:
        return False
    return gap >= travel_time(model, pred, succ)


def windows_overlap(a: Event, b: Event) -> bool:
    """Closed-interval intersection of the two time windows."""
    return a.start <= b.end and b.start <= a.end
