"""Top-k result type and the ordering every solver ranks schedules by."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from chain_of_scheduling.core.errors import ConfigError
from chain_of_scheduling.core.model import Schedule


def rank_key(utility: float, event_ids: Sequence[str]) -> tuple[float, tuple[str, ...]]:
    """Higher utility first, then the lexicographically smaller id sequence."""
    return (-utility, tuple(event_ids))


def exact_weights(utilities: Mapping[str, float]) -> dict[str, int]:
    """
    Integer weights proportional to ``utilities``.

    Every float is a dyadic rational, so scaling by the largest denominator
    gives integers whose sums order schedules exactly, ties included.
    """
    ratios = {event_id: float(score).as_integer_ratio() for event_id, score in utilities.items()}
    scale = max((den for _, den in ratios.values()), default=1)
    return {event_id: num * (scale // den) for event_id, (num, den) in ratios.items()}


def validate_k(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ConfigError(f"k must be a positive integer, got {k!r}")


@dataclass(frozen=True)
class RankedSchedule:
    schedule: Schedule
    rank: int


@dataclass(frozen=True)
class TopKResult:
    candidates: tuple[RankedSchedule, ...]

    @classmethod
    def from_schedules(cls, schedules: Iterable[Schedule]) -> "TopKResult":
        return cls(
            candidates=tuple(
                RankedSchedule(schedule=schedule, rank=rank)
                for rank, schedule in enumerate(schedules, start=1)
            )
        )

    @property
    def schedules(self) -> tuple[Schedule, ...]:
        return tuple(candidate.schedule for candidate in self.candidates)

    @property
    def best(self) -> Schedule:
        if not self.candidates:
            return Schedule.empty()
        return self.candidates[0].schedule

    def __len__(self) -> int:
        return len(self.candidates)
