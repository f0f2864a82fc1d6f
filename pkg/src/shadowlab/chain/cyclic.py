"""Period, cyclic classes and the chain relations built on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterable, Mapping

import networkx as nx

from shadowlab.chain.components import is_chain_transitive
from shadowlab.chain.graph import TransitionGraph
from shadowlab.errors import DifferentComponents, NotChainTransitive, NotStronglyConnected
from shadowlab.systems.finite import vertex_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CyclicDecomposition:
    """D_0 .. D_{m-1}: every edge goes from D_i to D_{i+1 mod m}.

    Class 0 holds the least vertex of the component.
    """

    m: int
    class_of: Mapping[Hashable, int]
    classes: tuple[frozenset, ...]

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.class_of)

    def residue(self, v: Hashable) -> int:
        return self.class_of[v]

    def as_lists(self) -> list[list[Hashable]]:
        return [sorted(c, key=vertex_key) for c in self.classes]


def component_subgraph(component: Iterable[Hashable], graph: TransitionGraph) -> nx.DiGraph:
    verts = list(component)
    missing = [v for v in verts if v not in graph]
    if missing:
        raise NotStronglyConnected(f"vertices {missing[:3]} are not in the graph")
    sub = graph.nx.subgraph(verts)
    if sub.number_of_nodes() == 0 or sub.number_of_edges() == 0:
        raise NotStronglyConnected("component has no cycle")
    if not nx.is_strongly_connected(sub):
        raise NotStronglyConnected("component is not strongly connected")
    return sub


def level_gcd(sub: nx.DiGraph) -> tuple[dict[Hashable, int], int]:
    """BFS levels from the least vertex and the gcd of level(u) + 1 - level(v) over edges.

    On a strongly connected graph the gcd is the gcd of all cycle lengths.
    """
    root = min(sub.nodes, key=vertex_key)
    level = nx.single_source_shortest_path_length(sub, root)
    m = 0
    for u, v in sub.edges:
        m = gcd(m, abs(level[u] + 1 - level[v]))
    return level, m


def graph_period(component: Iterable[Hashable], graph: TransitionGraph) -> int:
    """gcd of all cycle lengths, read from BFS levels."""
    return level_gcd(component_subgraph(component, graph))[1]


def cyclic_decomposition(
    component: Iterable[Hashable], graph: TransitionGraph
) -> CyclicDecomposition:
    level, m = level_gcd(component_subgraph(component, graph))
    class_of = {v: level[v] % m for v in level}
    buckets: list[set] = [set() for _ in range(m)]
    for v, r in class_of.items():
        buckets[r].add(v)
    return CyclicDecomposition(m, class_of, tuple(frozenset(b) for b in buckets))


def decompose(graph: TransitionGraph) -> CyclicDecomposition:
    """Cyclic decomposition of a chain transitive graph as a whole."""
    if not is_chain_transitive(graph):
        raise NotChainTransitive("graph is not chain transitive")
    return cyclic_decomposition(graph.vertices, graph)


def chain_equivalent(
    graph: TransitionGraph, decomposition: CyclicDecomposition, x: Hashable, y: Hashable
) -> bool:
    """x ~ y: some path x -> y has length divisible by m.

    On a strongly connected graph this is exactly class_of(x) == class_of(y).
    """
    if x not in graph or y not in graph:
        raise DifferentComponents(f"{x!r} or {y!r} is not a vertex of the graph")
    if x not in decomposition.class_of or y not in decomposition.class_of:
        raise DifferentComponents(f"{x!r} and {y!r} are not in the decomposed component")
    return decomposition.class_of[x] == decomposition.class_of[y]


def chain_proximal(graph: TransitionGraph, x: Hashable, y: Hashable) -> bool:
    """Some diagonal pair (w, w) is reachable from (x, y) in the product graph."""
    if x == y:
        return True
    product = nx.tensor_product(graph.nx, graph.nx)
    return any(a == b for a, b in nx.descendants(product, (x, y)))


def is_chain_mixing(graph: TransitionGraph) -> bool:
    if not is_chain_transitive(graph):
        return False
    return graph_period(graph.vertices, graph) == 1
