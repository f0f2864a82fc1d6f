"""Transition graphs: the finite substrate of delta-chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Literal, Mapping

import networkx as nx

from shadowlab.errors import BadParameter
from shadowlab.systems.finite import FiniteMapSystem, vertex_key
from shadowlab.systems.symbolic import SymbolicSystem

Provenance = Literal["symbolic", "delta", "explicit"]


@dataclass(frozen=True, eq=False)
class TransitionGraph:
    """Directed graph whose edge x -> y encodes one admissible chain step."""

    vertices: tuple[Hashable, ...]
    successors: Mapping[Hashable, frozenset]
    provenance: Provenance = "explicit"
    delta: float | None = field(default=None)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Hashable, Hashable]],
        vertices: Iterable[Hashable] = (),
        provenance: Provenance = "explicit",
        delta: float | None = None,
    ) -> TransitionGraph:
        edges = list(edges)
        verts = set(vertices)
        for u, v in edges:
            verts.update((u, v))
        succ: dict[Hashable, set] = {v: set() for v in verts}
        for u, v in edges:
            succ[u].add(v)
        return cls(
            tuple(sorted(verts, key=vertex_key)),
            {v: frozenset(s) for v, s in succ.items()},
            provenance,
            delta,
        )

    def __contains__(self, v: object) -> bool:
        return v in self.successors

    def __len__(self) -> int:
        return len(self.vertices)

    def succ(self, v: Hashable) -> list[Hashable]:
        """Successors of v in the deterministic tie-break order."""
        return sorted(self.successors[v], key=vertex_key)

    def has_edge(self, u: Hashable, v: Hashable) -> bool:
        return v in self.successors.get(u, ())

    def edges(self) -> Iterator[tuple[Hashable, Hashable]]:
        for u in self.vertices:
            for v in self.succ(u):
                yield u, v

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors.values())

    @cached_property
    def nx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    @cached_property
    def predecessors(self) -> dict[Hashable, frozenset]:
        pred: dict[Hashable, set] = {v: set() for v in self.vertices}
        for u, v in self.edges():
            pred[v].add(u)
        return {v: frozenset(p) for v, p in pred.items()}

    def subgraph(self, vertices: Iterable[Hashable]) -> TransitionGraph:
        keep = set(vertices)
        return TransitionGraph(
            tuple(v for v in self.vertices if v in keep),
            {v: frozenset(self.successors[v] & keep) for v in keep},
            self.provenance,
            self.delta,
        )


def delta_transition_graph(system: FiniteMapSystem, delta: float) -> TransitionGraph:
    """Edge x -> y iff d(f(x), y) <= delta; delta = 0 gives the functional graph."""
    if delta < 0:
        raise BadParameter(f"delta must be >= 0, got {delta}")
    edges = []
    for i, x in enumerate(system.points):
        row = system.metric[system.image[i]]
        edges.extend((x, y) for j, y in enumerate(system.points) if row[j] <= delta)
    return TransitionGraph.from_edges(edges, system.points, "delta", delta)


def symbolic_transition_graph(system: SymbolicSystem) -> TransitionGraph:
    names = system.alphabet.symbols
    edges = [
        (names[a], names[b])
        for a in range(system.size)
        for b in range(system.size)
        if system.allowed[a][b]
    ]
    return TransitionGraph.from_edges(edges, names, "symbolic")
