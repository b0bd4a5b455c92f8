"""Exceptions raised by the scheduling stack."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed instance data or a reference to an unknown event."""


class ConfigError(ValueError):
    """Invalid solver, generator or CLI configuration."""


class SizeGuardError(ValueError):
    """Exhaustive search refused because the instance is too large."""


class TravelLookupError(LookupError):
    """Travel matrix has no entry for an event pair."""

    def __init__(self, origin: str, destination: str) -> None:
        super().__init__(f"No travel time for pair ({origin!r}, {destination!r})")
        self.origin = origin
        self.destination = destination

    def __str__(self) -> str:
        return str(self.args[0])


class TraceParseError(ValueError):
    """No event sequence could be extracted from a trace text."""

    def __init__(self, message: str, issues: tuple[str, ...] = ()) -> None:
        super().__init__(message)
        self.issues = issues
