"""Repair layer: conflict rate and schedule post-processing."""

from chain_of_scheduling.repair.repair import (
    RepairOutcome,
    RepairStrategy,
    Substitution,
    conflict_rate,
    post_process,
    repair_schedule,
    schedule_conflicted,
    strip_conflicts,
)

__all__ = [
    "RepairOutcome",
    "RepairStrategy",
    "Substitution",
    "conflict_rate",
    "post_process",
    "repair_schedule",
    "schedule_conflicted",
    "strip_conflicts",
]
