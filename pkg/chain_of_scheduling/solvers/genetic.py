"""
Genetic-algorithm baseline over event subsets.

A chromosome is a bitmask over the time-sorted events. Decoding keeps the
selected events in time order and drops every event that is incompatible
with the last kept one, so every decoded schedule is feasible.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from chain_of_scheduling.core.errors import ConfigError
from chain_of_scheduling.core.feasibility import make_schedule, schedule_utility, time_order_key
from chain_of_scheduling.core.model import Instance, Schedule
from chain_of_scheduling.core.travel import pair_compatible

logger = logging.getLogger(__name__)

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 64
    generations: int = 200
    mutation_rate: float = 0.1
    crossover_rate: float = 0.8
    seed: int = 0

    def validate(self) -> None:
        if self.population_size < 2:
            raise ConfigError("population_size must be at least 2")
        if self.generations < 1:
            raise ConfigError("generations must be positive")
        for name in ("mutation_rate", "crossover_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {rate}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


class _Decoder:
    """Memoized chromosome decoding against a precomputed compatibility table."""

    def __init__(self, instance: Instance) -> None:
        self.instance = instance
        self.order = sorted(instance.events, key=time_order_key)
        self.compatible = [
            [pair_compatible(instance.travel, pred, succ) for succ in self.order]
            for pred in self.order
        ]
        self._cache: dict[bytes, tuple[float, tuple[str, ...]]] = {}

    def decode(self, chromosome: np.ndarray) -> tuple[float, tuple[str, ...]]:
        key = np.packbits(chromosome).tobytes()
        cached = self._cache.get(key)
        if cached is not None:
            return cached

        kept: list[int] = []
        for idx in np.flatnonzero(chromosome).tolist():
            if not kept or self.compatible[kept[-1]][idx]:
                kept.append(idx)
        ids = tuple(self.order[idx].id for idx in kept)
        result = (schedule_utility(self.instance, ids), ids)
        self._cache[key] = result
        return result

    def fitness(self, population: np.ndarray) -> np.ndarray:
        return np.array([self.decode(row)[0] for row in population], dtype=float)


def _tournament(rng: np.random.Generator, fitness: np.ndarray, count: int) -> np.ndarray:
    contenders = rng.integers(0, len(fitness), size=(count, 2))
    first, second = contenders[:, 0], contenders[:, 1]
    return np.where(fitness[first] >= fitness[second], first, second)


def solve_genetic(instance: Instance, config: GaConfig | None = None) -> Schedule:
    """Evolve event subsets; deterministic for a fixed ``config.seed``."""
    config = config or GaConfig()
    config.validate()

    if len(instance) == 0:
        return Schedule.empty()

    decoder = _Decoder(instance)
    rng = np.random.default_rng(config.seed)
    size, n_genes = config.population_size, len(decoder.order)

    population = rng.random((size, n_genes)) < 0.5
    # All-ones decodes to the chain greedily built in start order.
    population[0, :] = True
    fitness = decoder.fitness(population)

    for generation in range(config.generations):
        elite = population[int(np.argmax(fitness))].copy()
        n_children = size - 1

        first = population[_tournament(rng, fitness, n_children)]
        second = population[_tournament(rng, fitness, n_children)]
        crossing = rng.random(n_children) < config.crossover_rate
        uniform = rng.random((n_children, n_genes)) < 0.5
        children = np.where(crossing[:, None] & uniform, second, first)
        children ^= rng.random((n_children, n_genes)) < config.mutation_rate

        population = np.vstack([elite[None, :], children])
        fitness = decoder.fitness(population)

        if logger.isEnabledFor(logging.DEBUG) and generation % 50 == 0:
            logger.debug("GA generation %d best %.4f", generation, float(fitness.max()))

    _, ids = decoder.decode(population[int(np.argmax(fitness))])
    return make_schedule(instance, ids)
