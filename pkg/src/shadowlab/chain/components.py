"""Chain components of a transition graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import networkx as nx

from shadowlab.chain.graph import TransitionGraph
from shadowlab.systems.finite import vertex_key


@dataclass(frozen=True)
class ChainComponentSet:
    """Partition of the chain recurrent vertices plus the leftovers."""

    components: tuple[frozenset, ...]
    non_recurrent: frozenset

    def component_of(self, v: Hashable) -> frozenset | None:
        for c in self.components:
            if v in c:
                return c
        return None

    @property
    def recurrent(self) -> frozenset:
        return frozenset().union(*self.components)


def chain_components(graph: TransitionGraph) -> ChainComponentSet:
    """Strongly connected components that carry a cycle.

    A single vertex counts only with a self-loop.
    """
    g = graph.nx
    components = []
    leftover: set = set()
    for scc in nx.strongly_connected_components(g):
        if len(scc) > 1 or any(g.has_edge(v, v) for v in scc):
            components.append(frozenset(scc))
        else:
            leftover.update(scc)
    components.sort(key=lambda c: vertex_key(min(c, key=vertex_key)))
    return ChainComponentSet(tuple(components), frozenset(leftover))


def is_chain_transitive(graph: TransitionGraph) -> bool:
    if len(graph) == 0 or graph.edge_count == 0:
        return False
    return nx.is_strongly_connected(graph.nx)
