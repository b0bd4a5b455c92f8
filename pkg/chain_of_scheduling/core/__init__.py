"""Core layer: domain types, travel model and feasibility predicates."""

from chain_of_scheduling.core.codec import dump_instance, load_instance, parse_instance
from chain_of_scheduling.core.errors import (
    ConfigError,
    InputError,
    SizeGuardError,
    TraceParseError,
    TravelLookupError,
)
from chain_of_scheduling.core.feasibility import (
    check_feasible,
    is_feasible,
    make_schedule,
    schedule_utility,
)
from chain_of_scheduling.core.model import (
    Event,
    Instance,
    Location,
    Schedule,
    TravelMode,
    TravelModel,
    Violation,
    ViolationKind,
)
from chain_of_scheduling.core.travel import pair_compatible, travel_time

__all__ = [
    "ConfigError",
    "Event",
    "InputError",
    "Instance",
    "Location",
    "Schedule",
    "SizeGuardError",
    "TraceParseError",
    "TravelLookupError",
    "TravelMode",
    "TravelModel",
    "Violation",
    "ViolationKind",
    "check_feasible",
    "dump_instance",
    "is_feasible",
    "load_instance",
    "make_schedule",
    "pair_compatible",
    "parse_instance",
    "schedule_utility",
    "travel_time",
]
