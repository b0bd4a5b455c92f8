"""
Text rendering for scheduling prompts and CoS traces.

Trace grammar::

    Exploration:
    1. e01 [09:00-10:30] -> e04 [11:00-12:00]
    2. (none)
    Verification:
    0.60 + 0.75 = 1.35
    (none) = 0.00
    Integration:
    Best schedule: e01 -> e04 with utility 1.35
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

import numpy as np

from chain_of_scheduling.core.model import Instance, TravelMode, format_clock
from chain_of_scheduling.costrace.trace import CosTrace

EXPLORATION_HEADER = "Exploration:"
VERIFICATION_HEADER = "Verification:"
INTEGRATION_HEADER = "Integration:"
NONE_MARK = "(none)"
ARROW = " -> "


class TraceStyle(str, Enum):
    FULL = "full"
    NO_EXPLORATION = "no-exploration"
    NO_VERIFICATION = "no-verification"
    NO_INTEGRATION = "no-integration"


def _format_utility(value: float) -> str:
    return f"{value:.2f}"


def _exploration_line(rank: int, instance: Instance, event_ids: Sequence[str]) -> str:
    if not event_ids:
        return f"{rank}. {NONE_MARK}"
    steps = []
    for event_id in event_ids:
        event = instance.event(event_id)
        steps.append(f"{event.id} [{event.window}]")
    return f"{rank}. {ARROW.join(steps)}"


def _verification_line(terms: Sequence[float], total: float) -> str:
    left = " + ".join(_format_utility(term) for term in terms) if terms else NONE_MARK
    return f"{left} = {_format_utility(total)}"


def _integration_line(event_ids: Sequence[str], total: float) -> str:
    sequence = ARROW.join(event_ids) if event_ids else NONE_MARK
    return f"Best schedule: {sequence} with utility {_format_utility(total)}"


def render_trace(
    trace: CosTrace,
    instance: Instance,
    style: TraceStyle = TraceStyle.FULL,
    seed: int = 0,
) -> str:
    """
    Deterministic text for a trace; identical inputs give identical text.

    ``no-integration`` answers with a candidate drawn by ``seed`` instead of
    the best verified one. The other styles ignore ``seed``.
    """
    indices = list(range(len(trace.exploration)))
    if style is TraceStyle.NO_EXPLORATION:
        indices = [trace.integration.index] if indices else []

    lines = [EXPLORATION_HEADER]
    for rank, index in enumerate(indices, start=1):
        schedule = trace.exploration.schedules[index]
        lines.append(_exploration_line(rank, instance, schedule.event_ids))

    if style is not TraceStyle.NO_VERIFICATION:
        lines.append(VERIFICATION_HEADER)
        for index in indices:
            entry = trace.verification[index]
            lines.append(_verification_line(entry.terms, entry.total))

    lines.append(INTEGRATION_HEADER)
    chosen = trace.integration.schedule
    if style is TraceStyle.NO_INTEGRATION and indices:
        drawn = int(np.random.default_rng(seed).integers(len(indices)))
        chosen = trace.exploration.schedules[indices[drawn]]
    lines.append(_integration_line(chosen.event_ids, chosen.total_utility))
    return "\n".join(lines) + "\n"


def _travel_lines(instance: Instance) -> list[str]:
    travel = instance.travel
    if travel.mode is TravelMode.PLANAR:
        return [
            f"Travel: planar, {travel.speed:g} km per minute; "
            "travel minutes = ceil(distance / speed)"
        ]
    lines = ["Travel minutes (from: to=minutes):"]
    matrix = travel.matrix or {}
    for origin in instance.event_ids:
        row = matrix.get(origin, {})
        cells = ", ".join(
            f"{destination}={row[destination]}"
            for destination in instance.event_ids
            if destination != origin and destination in row
        )
        lines.append(f"{origin}: {cells}")
    return lines


def render_prompt(instance: Instance) -> str:
    """Serialize one scheduling problem as the prompt side of an SFT pair."""
    start, end = instance.day_window
    lines = [
        f"User: {instance.user_id}",
        f"Day window: {format_clock(start)}-{format_clock(end)}",
        *_travel_lines(instance),
        "Events:",
    ]
    for event in instance.events:
        line = (
            f"- {event.id}: {event.window} at ({event.location.x:.2f}, "
            f"{event.location.y:.2f}), utility "
            f"{_format_utility(instance.utilities[event.id])}"
        )
        if event.description:
            line += f", {event.description}"
        lines.append(line)
    lines.append(
        "Task: pick an ordered sequence of events with the highest total utility. "
        "Each event must end early enough to travel to the next one before it "
        "starts, and no two events may overlap. Answer with Exploration, "
        "Verification and Integration sections."
    )
    return "\n".join(lines) + "\n"
