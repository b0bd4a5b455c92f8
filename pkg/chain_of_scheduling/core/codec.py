"""
Instance JSON encoding/decoding.

The wire format is flat (``x``/``y`` on each event) and validated with
pydantic before it is turned into domain objects.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, Field

from chain_of_scheduling.core.model import (
    DEFAULT_DAY_WINDOW,
    Event,
    Instance,
    Location,
    TravelMode,
    TravelModel,
)


class EventPayload(BaseModel):
    id: str = Field(..., description="Event identifier, unique within the instance")
    start: int = Field(..., description="Start, minutes since midnight")
    end: int = Field(..., description="End, minutes since midnight")
    x: float
    y: float
    description: Optional[str] = None


class TravelPayload(BaseModel):
    mode: TravelMode
    speed: Optional[float] = Field(default=None, description="km per minute (planar)")
    matrix: Optional[dict[str, dict[str, int]]] = Field(
        default=None, description="matrix[from_id][to_id] in minutes"
    )


class InstancePayload(BaseModel):
    user_id: str
    day_window: tuple[int, int] = DEFAULT_DAY_WINDOW
    events: list[EventPayload] = Field(default_factory=list)
    utilities: dict[str, float] = Field(default_factory=dict)
    travel: TravelPayload
    instance_id: Optional[str] = None


def instance_from_payload(payload: InstancePayload) -> Instance:
    if payload.travel.mode is TravelMode.PLANAR:
        travel = TravelModel.planar(payload.travel.speed)  # type: ignore[arg-type]
    else:
        travel = TravelModel.from_matrix(payload.travel.matrix or {})

    events = tuple(
        Event(
            id=item.id,
            start=item.start,
            end=item.end,
            location=Location(item.x, item.y),
            description=item.description,
        )
        for item in payload.events
    )
    return Instance(
        events=events,
        travel=travel,
        utilities=dict(payload.utilities),
        user_id=payload.user_id,
        day_window=payload.day_window,
        instance_id=payload.instance_id,
    )


def instance_to_payload(instance: Instance) -> InstancePayload:
    travel = instance.travel
    return InstancePayload(
        user_id=instance.user_id,
        day_window=instance.day_window,
        events=[
            EventPayload(
                id=event.id,
                start=event.start,
                end=event.end,
                x=event.location.x,
                y=event.location.y,
                description=event.description,
            )
            for event in instance.events
        ],
        utilities={event.id: instance.utilities[event.id] for event in instance.events},
        travel=TravelPayload(
            mode=travel.mode,
            speed=travel.speed,
            matrix=(
                {origin: dict(row) for origin, row in travel.matrix.items()}
                if travel.matrix is not None
                else None
            ),
        ),
        instance_id=instance.instance_id,
    )


def parse_instance(text: Union[str, bytes]) -> Instance:
    """Decode one instance JSON document."""
    return instance_from_payload(InstancePayload.model_validate_json(text))


def dump_instance(instance: Instance) -> str:
    """Encode an instance as deterministic, indented JSON."""
    return instance_to_payload(instance).model_dump_json(indent=2, exclude_none=True)


def load_instance(path: Union[str, Path]) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance(handle.read())


def save_instance(instance: Instance, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_instance(instance))
        handle.write("\n")
