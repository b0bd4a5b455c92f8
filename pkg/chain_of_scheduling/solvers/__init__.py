"""Solver layer: exact top-k DP, exhaustive oracle, greedy and genetic baselines."""

from __future__ import annotations

from enum import Enum
from typing import Optional

from chain_of_scheduling.core.model import Instance, Schedule
from chain_of_scheduling.solvers.dp import solve_dp_topk
from chain_of_scheduling.solvers.exhaustive import MAX_EXHAUSTIVE_EVENTS, solve_exhaustive
from chain_of_scheduling.solvers.genetic import GaConfig, solve_genetic
from chain_of_scheduling.solvers.greedy import solve_greedy
from chain_of_scheduling.solvers.ranking import RankedSchedule, TopKResult, exact_weights, rank_key


class Solver(str, Enum):
    DP = "dp"
    ORACLE = "oracle"
    GREEDY = "greedy"
    GA = "ga"


def solve(
    instance: Instance,
    solver: Solver,
    k: int = 1,
    ga_config: Optional[GaConfig] = None,
) -> Schedule:
    """Run one solver and return its single best schedule."""
    if solver is Solver.DP:
        return solve_dp_topk(instance, k).best
    if solver is Solver.ORACLE:
        return solve_exhaustive(instance, k).best
    if solver is Solver.GREEDY:
        return solve_greedy(instance)
    return solve_genetic(instance, ga_config)


__all__ = [
    "GaConfig",
    "MAX_EXHAUSTIVE_EVENTS",
    "RankedSchedule",
    "Solver",
    "TopKResult",
    "exact_weights",
    "rank_key",
    "solve",
    "solve_dp_topk",
    "solve_exhaustive",
    "solve_genetic",
    "solve_greedy",
]
