"""Cyclic class of a point, read off the system's transition graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable

from shadowlab.chain import (
    CyclicDecomposition,
    TransitionGraph,
    chain_components,
    cyclic_decomposition,
    decompose,
    delta_transition_graph,
    symbolic_transition_graph,
)
from shadowlab.errors import BadParameter
from shadowlab.systems import FiniteMapSystem, SymbolicPoint, SymbolicSystem
from shadowlab.systems.finite import vertex_key


def _vertex(point: Any) -> Hashable:
    if isinstance(point, SymbolicPoint):
        return point.alphabet.symbols[point.symbol(0)]
    return point


@dataclass(frozen=True, eq=False)
class ClassLabeling:
    """Cyclic decomposition of a chain transitive system, applied to points.

    A symbolic point belongs to the class of its first symbol; a point of a
    finite map to the class of its vertex in the delta-transition graph.
    """

    graph: TransitionGraph
    decomposition: CyclicDecomposition

    @property
    def m(self) -> int:
        return self.decomposition.m

    def of(self, point: Any) -> int:
        return self.decomposition.class_of[_vertex(point)]

    def symbols_in(self, residue: int) -> list[Hashable]:
        return sorted(self.decomposition.classes[residue], key=vertex_key)


def transition_graph(system: Any, delta: float = 0.0) -> TransitionGraph:
    if isinstance(system, SymbolicSystem):
        return symbolic_transition_graph(system)
    if isinstance(system, FiniteMapSystem):
        return delta_transition_graph(system, delta)
    raise BadParameter(f"cyclic classes need a finite presentation, got {system.kind!r}")


def class_labeling(system: Any, delta: float = 0.0) -> ClassLabeling:
    """Raises NotChainTransitive when the graph is not strongly connected."""
    graph = transition_graph(system, delta)
    return ClassLabeling(graph, decompose(graph))


def same_class(system: SymbolicSystem, a: SymbolicPoint, b: SymbolicPoint) -> bool:
    """Whether a and b lie in the same cyclic class of the same chain component.

    Points whose first symbol is not chain recurrent only match themselves by
    first symbol.
    """
    graph = symbolic_transition_graph(system)
    va, vb = _vertex(a), _vertex(b)
    component = chain_components(graph).component_of(va)
    if component is None or vb not in component:
        return component is None and va == vb
    dec = cyclic_decomposition(component, graph)
    return dec.class_of[va] == dec.class_of[vb]
