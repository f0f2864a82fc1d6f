"""Chain recurrence structure of finite transition graphs."""

from shadowlab.chain.components import ChainComponentSet, chain_components, is_chain_transitive
from shadowlab.chain.cyclic import (
    CyclicDecomposition,
    chain_equivalent,
    chain_proximal,
    cyclic_decomposition,
    decompose,
    graph_period,
    is_chain_mixing,
)
from shadowlab.chain.graph import TransitionGraph, delta_transition_graph, symbolic_transition_graph
from shadowlab.chain.paths import (
    UniformChainBound,
    cycle_lengths,
    frobenius_number,
    path_of_length,
    uniform_chain_bound,
)

__all__ = [
    "ChainComponentSet",
    "CyclicDecomposition",
    "TransitionGraph",
    "UniformChainBound",
    "chain_components",
    "chain_equivalent",
    "chain_proximal",
    "cycle_lengths",
    "cyclic_decomposition",
    "decompose",
    "delta_transition_graph",
    "frobenius_number",
    "graph_period",
    "is_chain_mixing",
    "is_chain_transitive",
    "path_of_length",
    "symbolic_transition_graph",
    "uniform_chain_bound",
]
