"""Chain of Scheduling: event-scheduling solvers, repair, CoS traces and benchmarks."""

__all__ = ["core", "solvers", "repair", "costrace", "bench", "cli", "e2e"]
__version__ = "0.1.0"
