"""
Directed Hamiltonian Path reduction and helpers.

Vertex i (in construction order) becomes an event with window
[10i, 10i + 9], utility 1 and matrix travel of 1 minute along edges and
``span + 1`` minutes (unreachable) otherwise. Windows fix the visiting
order, so a schedule of utility n is a Hamiltonian path that follows the
construction order; pass ``order`` to choose it.
"""

from __future__ import annotations

from pathlib import Path
from typing import Hashable, Optional, Sequence, Union

import networkx as nx
from pydantic import BaseModel, Field

from chain_of_scheduling.core.errors import InputError
from chain_of_scheduling.core.model import MINUTES_PER_DAY, Event, Instance, Location, TravelModel

SLOT_MINUTES = 10
EDGE_TRAVEL_MINUTES = 1

Vertex = Union[int, str]


class DigraphPayload(BaseModel):
    vertices: Union[int, list[Vertex]] = Field(
        ..., description="Vertex count (labels 0..n-1) or explicit vertex labels"
    )
    edges: list[tuple[Vertex, Vertex]] = Field(default_factory=list)


def graph_from_payload(payload: DigraphPayload) -> nx.DiGraph:
    graph = nx.DiGraph()
    if isinstance(payload.vertices, int):
        graph.add_nodes_from(range(payload.vertices))
    else:
        graph.add_nodes_from(payload.vertices)
    for u, v in payload.edges:
        if u not in graph or v not in graph:
            raise InputError(f"Edge ({u!r}, {v!r}) references an unknown vertex")
        graph.add_edge(u, v)
    return graph


def load_digraph(path: Union[str, Path]) -> nx.DiGraph:
    with open(path, "r", encoding="utf-8") as handle:
        return graph_from_payload(DigraphPayload.model_validate_json(handle.read()))


def random_digraph(n: int, p: float, seed: int) -> nx.DiGraph:
    return nx.gnp_random_graph(n, p, seed=seed, directed=True)


def reduce_dhp(graph: nx.DiGraph, order: Optional[Sequence[Hashable]] = None) -> Instance:
    """
    Scheduling instance for ``graph`` with vertices laid out in ``order``.

    An optimum of n certifies a Hamiltonian path for any ``order``. The
    converse only holds for paths that follow ``order``: a graph whose only
    Hamiltonian path visits vertices in another order still scores below n.
    Callers that need "optimum n iff Hamiltonian" must maximize the optimum
    over all orders (see ``has_hamiltonian_path`` for small graphs).
    """
    vertices = list(order) if order is not None else list(graph.nodes)
    n = len(vertices)
    if n < 1:
        raise InputError("Reduction needs at least one vertex")
    if len(set(vertices)) != n or set(vertices) != set(graph.nodes):
        raise InputError("order must be a permutation of the graph's vertices")
    if n * SLOT_MINUTES > MINUTES_PER_DAY:
        raise InputError(f"At most {MINUTES_PER_DAY // SLOT_MINUTES} vertices fit in one day")

    ids = [str(vertex) for vertex in vertices]
    if len(set(ids)) != n:
        raise InputError("Vertex labels collide once converted to event ids")

    span = n * SLOT_MINUTES
    unreachable = span + 1

    events = tuple(
        Event(
            id=ids[i],
            start=i * SLOT_MINUTES,
            end=i * SLOT_MINUTES + SLOT_MINUTES - 1,
            location=Location(float(i), 0.0),
        )
        for i in range(n)
    )
    matrix = {
        ids[i]: {
            ids[j]: (
                0
                if i == j
                else EDGE_TRAVEL_MINUTES
                if graph.has_edge(vertices[i], vertices[j])
                else unreachable
            )
            for j in range(n)
        }
        for i in range(n)
    }
    return Instance(
        events=events,
        travel=TravelModel.from_matrix(matrix),
        utilities={event_id: 1.0 for event_id in ids},
        user_id="dhp-reduction",
        day_window=(0, span),
        instance_id=f"dhp-n{n}",
    )


def has_hamiltonian_path(graph: nx.DiGraph) -> bool:
    """Brute-force depth-first search for a directed Hamiltonian path."""
    n = graph.number_of_nodes()
    if n == 0:
        return False

    def extend(vertex: Hashable, visited: set[Hashable]) -> bool:
        if len(visited) == n:
            return True
        for successor in graph.successors(vertex):
            if successor not in visited:
                visited.add(successor)
                if extend(successor, visited):
                    return True
                visited.remove(successor)
        return False

    return any(extend(start, {start}) for start in graph.nodes)
