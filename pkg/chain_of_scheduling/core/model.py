"""
Domain types for event scheduling.

Times are integer minutes since midnight; utilities are floats in [0, 1].
All types are frozen and safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import math
from typing import Mapping, Optional

from chain_of_scheduling.core.errors import InputError

# =============================================================================
# Constants
# =============================================================================

MINUTES_PER_DAY = 1440
DEFAULT_DAY_WINDOW = (540, 1260)
UTILITY_TOLERANCE = 1e-9


def format_clock(minutes: int) -> str:
    """Render minutes since midnight as HH:MM."""
    hours, mins = divmod(minutes, 60)
    return f"{hours:02d}:{mins:02d}"


# =============================================================================
# Events and travel
# =============================================================================

class TravelMode(str, Enum):
    MATRIX = "matrix"
    PLANAR = "planar"


@dataclass(frozen=True)
class Location:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InputError(f"Non-finite coordinates ({self.x}, {self.y})")


@dataclass(frozen=True)
class Event:
    id: str
    start: int
    end: int
    location: Location
    description: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise InputError("Event id must be non-empty")
        if not 0 <= self.start < self.end <= MINUTES_PER_DAY:
            raise InputError(
                f"Event {self.id!r} has invalid window [{self.start}, {self.end}]"
            )

    @property
    def window(self) -> str:
        return f"{format_clock(self.start)}-{format_clock(self.end)}"


@dataclass(frozen=True)
class TravelModel:
    """
    Travel-time model between event venues.

    Planar mode divides euclidean distance by ``speed`` (km per minute);
    matrix mode looks up ``matrix[from_id][to_id]`` in minutes.
    """

    mode: TravelMode
    speed: Optional[float] = None
    matrix: Optional[Mapping[str, Mapping[str, int]]] = None

    def __post_init__(self) -> None:
        if self.mode is TravelMode.PLANAR:
            if self.speed is None or not math.isfinite(self.speed) or self.speed <= 0:
                raise InputError(f"Planar travel needs a positive speed, got {self.speed}")
            return

        if self.matrix is None:
            raise InputError("Matrix travel needs a matrix")
        for origin, row in self.matrix.items():
            for destination, minutes in row.items():
                if minutes < 0:
                    raise InputError(
                        f"Negative travel time {minutes} for ({origin!r}, {destination!r})"
                    )
                if origin == destination and minutes != 0:
                    raise InputError(f"Diagonal travel entry for {origin!r} must be 0")

    @classmethod
    def planar(cls, speed: float) -> "TravelModel":
        return cls(mode=TravelMode.PLANAR, speed=speed)

    @classmethod
    def from_matrix(cls, matrix: Mapping[str, Mapping[str, int]]) -> "TravelModel":
        return cls(
            mode=TravelMode.MATRIX,
            matrix={origin: dict(row) for origin, row in matrix.items()},
        )


# =============================================================================
# Instances and schedules
# =============================================================================

@dataclass(frozen=True)
class Instance:
    """One user-day: candidate events, travel model and per-event utilities."""

    events: tuple[Event, ...]
    travel: TravelModel
    utilities: Mapping[str, float]
    user_id: str = "anonymous"
    day_window: tuple[int, int] = DEFAULT_DAY_WINDOW
    instance_id: Optional[str] = None
    _index: dict[str, Event] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "day_window", tuple(self.day_window))

        index: dict[str, Event] = {}
        for event in self.events:
            if event.id in index:
                raise InputError(f"Duplicate event id {event.id!r}")
            index[event.id] = event
        object.__setattr__(self, "_index", index)

        missing = [eid for eid in index if eid not in self.utilities]
        if missing:
            raise InputError(f"Missing utilities for events: {', '.join(missing)}")
        extra = [eid for eid in self.utilities if eid not in index]
        if extra:
            raise InputError(f"Utilities given for unknown events: {', '.join(extra)}")
        for eid, score in self.utilities.items():
            if not (math.isfinite(score) and 0.0 <= score <= 1.0):
                raise InputError(f"Utility of {eid!r} must be in [0, 1], got {score}")

        start, end = self.day_window
        if not 0 <= start < end <= MINUTES_PER_DAY:
            raise InputError(f"Invalid day window {self.day_window}")

        if self.travel.mode is TravelMode.MATRIX:
            matrix = self.travel.matrix or {}
            for origin in index:
                row = matrix.get(origin, {})
                for destination in index:
                    if origin != destination and destination not in row:
                        raise InputError(
                            f"Travel matrix lacks pair ({origin!r}, {destination!r})"
                        )

    @property
    def label(self) -> str:
        return self.instance_id or self.user_id

    @property
    def event_ids(self) -> tuple[str, ...]:
        return tuple(event.id for event in self.events)

    def __len__(self) -> int:
        return len(self.events)

    def has_event(self, event_id: str) -> bool:
        return event_id in self._index

    def event(self, event_id: str) -> Event:
        try:
            return self._index[event_id]
        except KeyError:
            raise InputError(f"Unknown event id {event_id!r}") from None

    def utility(self, event_id: str) -> float:
        self.event(event_id)
        return self.utilities[event_id]


@dataclass(frozen=True)
class Schedule:
    event_ids: tuple[str, ...]
    total_utility: float
    feasible: bool

    @classmethod
    def empty(cls) -> "Schedule":
        return cls(event_ids=(), total_utility=0.0, feasible=True)

    def __len__(self) -> int:
        return len(self.event_ids)


# =============================================================================
# Feasibility violations
# =============================================================================

class ViolationKind(str, Enum):
    TRAVEL = "travel"
    DUPLICATE = "duplicate"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    first: int
    second: int
    detail: str
