"""Seeded synthetic instance generation."""

from __future__ import annotations

from dataclasses import dataclass, replace
import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import BaseModel, Field

from chain_of_scheduling.core.errors import ConfigError
from chain_of_scheduling.core.model import (
    DEFAULT_DAY_WINDOW,
    MINUTES_PER_DAY,
    Event,
    Instance,
    Location,
    TravelModel,
)

logger = logging.getLogger(__name__)

MAX_SEED = 2**64 - 1
UTILITY_DISTRIBUTIONS = ("uniform",)


@dataclass(frozen=True)
class GenConfig:
    n_events: int
    day_window: tuple[int, int] = DEFAULT_DAY_WINDOW
    duration_range: tuple[int, int] = (30, 120)
    area: float = 30.0
    speed: float = 0.5
    utility_distribution: str = "uniform"
    seed: int = 0

    def validate(self) -> None:
        if self.n_events < 0:
            raise ConfigError(f"n_events must be non-negative, got {self.n_events}")
        start, end = self.day_window
        if not 0 <= start < end <= MINUTES_PER_DAY:
            raise ConfigError(f"Invalid day window {self.day_window}")
        shortest, longest = self.duration_range
        if not 0 < shortest <= longest:
            raise ConfigError(f"Invalid duration range {self.duration_range}")
        if longest > end - start:
            raise ConfigError(
                f"Duration {longest} exceeds the {end - start}-minute day window"
            )
        if self.area <= 0 or self.speed <= 0:
            raise ConfigError("area and speed must be positive")
        if self.utility_distribution not in UTILITY_DISTRIBUTIONS:
            raise ConfigError(f"Unknown utility distribution {self.utility_distribution!r}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


class GenConfigPayload(BaseModel):
    n_events: int = Field(..., ge=0)
    day_window: tuple[int, int] = DEFAULT_DAY_WINDOW
    duration_range: tuple[int, int] = (30, 120)
    area: float = 30.0
    speed: float = 0.5
    utility_distribution: str = "uniform"
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    def to_config(self) -> GenConfig:
        return GenConfig(**self.model_dump())


def load_gen_config(path: Union[str, Path]) -> GenConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return GenConfigPayload.model_validate_json(handle.read()).to_config()


def generate_instance(config: GenConfig) -> Instance:
    """Draw one planar instance; identical configs give identical instances."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    n = config.n_events
    window_start, window_end = config.day_window
    shortest, longest = config.duration_range

    starts = rng.integers(window_start, window_end, size=n)
    durations = rng.integers(shortest, longest + 1, size=n)
    ends = np.minimum(starts + durations, window_end)
    xs = rng.uniform(0.0, config.area, size=n)
    ys = rng.uniform(0.0, config.area, size=n)
    scores = rng.uniform(0.0, 1.0, size=n)

    width = max(2, len(str(max(n - 1, 0))))
    events = []
    utilities = {}
    for idx in range(n):
        event_id = f"e{idx:0{width}d}"
        events.append(
            Event(
                id=event_id,
                start=int(starts[idx]),
                end=int(ends[idx]),
                location=Location(round(float(xs[idx]), 3), round(float(ys[idx]), 3)),
            )
        )
        utilities[event_id] = round(float(scores[idx]), 4)

    logger.debug("Generated %d events with seed %d", n, config.seed)
    return Instance(
        events=tuple(events),
        travel=TravelModel.planar(config.speed),
        utilities=utilities,
        user_id=f"user-{config.seed}",
        day_window=config.day_window,
        instance_id=f"gen-{config.seed}-n{n}",
    )


def generate_instances(config: GenConfig, count: int) -> list[Instance]:
    """``count`` instances seeded ``seed, seed + 1, ...``."""
    if count < 0:
        raise ConfigError(f"count must be non-negative, got {count}")
    return [generate_instance(replace(config, seed=config.seed + idx)) for idx in range(count)]
