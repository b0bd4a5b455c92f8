"""Shared instance builders for the test suite."""

from __future__ import annotations

from typing import Mapping, Optional

import pytest

from chain_of_scheduling.bench.generator import GenConfig, generate_instance
from chain_of_scheduling.core.model import Event, Instance, Location, TravelModel

DEFAULT_TRAVEL = 10


def matrix_instance(
    windows: Mapping[str, tuple[int, int]],
    utilities: Mapping[str, float],
    travel: int = DEFAULT_TRAVEL,
    overrides: Optional[Mapping[tuple[str, str], int]] = None,
    instance_id: Optional[str] = None,
) -> Instance:
    """Matrix-travel instance with a uniform travel time and per-pair overrides."""
    overrides = overrides or {}
    ids = list(windows)
    matrix = {
        a: {b: 0 if a == b else overrides.get((a, b), travel) for b in ids} for a in ids
    }
    events = tuple(
        Event(id=event_id, start=start, end=end, location=Location(float(idx), 0.0))
        for idx, (event_id, (start, end)) in enumerate(windows.items())
    )
    return Instance(
        events=events,
        travel=TravelModel.from_matrix(matrix),
        utilities=dict(utilities),
        user_id="tester",
        instance_id=instance_id,
    )


def planar_instance(
    events: Mapping[str, tuple[int, int, float, float]],
    utilities: Mapping[str, float],
    speed: float = 1.0,
) -> Instance:
    return Instance(
        events=tuple(
            Event(id=event_id, start=start, end=end, location=Location(x, y))
            for event_id, (start, end, x, y) in events.items()
        ),
        travel=TravelModel.planar(speed),
        utilities=dict(utilities),
        user_id="tester",
    )


def chain_instance(n_events: int, score: float) -> Instance:
    """Back-to-back events at one venue, every later event reachable, all scored ``score``."""
    ids = [f"c{idx:03d}" for idx in range(n_events)]
    return planar_instance(
        events={event_id: (2 * idx, 2 * idx + 1, 0.0, 0.0) for idx, event_id in enumerate(ids)},
        utilities={event_id: score for event_id in ids},
    )


def seeded_instance(n_events: int, seed: int) -> Instance:
    return generate_instance(GenConfig(n_events=n_events, seed=seed))


@pytest.fixture
def repair_scene() -> Instance:
    """A -> B -> C -> D where B cannot reach C in time and F is the only way out."""
    return matrix_instance(
        windows={
            "A": (540, 600),
            "B": (610, 660),
            "C": (665, 720),
            "D": (780, 840),
            "E": (600, 700),
            "F": (680, 740),
        },
        utilities={"A": 0.5, "B": 0.6, "C": 0.9, "D": 0.4, "E": 0.3, "F": 0.7},
        overrides={("B", "C"): 30},
        instance_id="repair-scene",
    )


@pytest.fixture
def small_instance() -> Instance:
    """Three events on a line; the middle one blocks the outer pair."""
    return planar_instance(
        events={
            "e01": (540, 600, 0.0, 0.0),
            "e02": (590, 700, 5.0, 0.0),
            "e03": (620, 680, 10.0, 0.0),
        },
        utilities={"e01": 0.6, "e02": 0.75, "e03": 0.5},
    )


@pytest.fixture
def random_instances() -> list[Instance]:
    return [seeded_instance(12, seed) for seed in range(20)]
