"""Tests for transition graphs and chain components."""

from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowlab.chain import (
    chain_components,
    cyclic_decomposition,
    delta_transition_graph,
    is_chain_transitive,
    symbolic_transition_graph,
)
from shadowlab.errors import BadParameter
from shadowlab.systems import FiniteMapSystem
from tests.helpers.systems import graph


@st.composite
def random_graphs(draw, max_vertices: int = 8):
    n = draw(st.integers(1, max_vertices))
    pairs = list(itertools.product(range(n), repeat=2))
    edges = draw(st.lists(st.sampled_from(pairs), max_size=3 * n, unique=True))
    return n, edges


class TestDeltaGraph:
    def test_zero_delta_is_functional_graph(self, eventual_cycle):
        g = delta_transition_graph(eventual_cycle, 0.0)
        assert set(g.edges()) == {(0, 1), (1, 2), (2, 1)}

    def test_identity_on_two_points(self):
        system = FiniteMapSystem.on_line({"a": 0.0, "b": 1.0}, {"a": "a", "b": "b"})
        g = delta_transition_graph(system, 1.0)
        assert set(g.edges()) == {("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")}

    def test_identity_on_three_points(self):
        system = FiniteMapSystem.on_line(
            {"a": 0.0, "b": 0.4, "c": 1.0}, {"a": "a", "b": "b", "c": "c"}
        )
        g = delta_transition_graph(system, 0.5)
        assert set(g.edges()) == {("a", "a"), ("a", "b"), ("b", "a"), ("b", "b"), ("c", "c")}

    def test_negative_delta(self, eventual_cycle):
        with pytest.raises(BadParameter):
            delta_transition_graph(eventual_cycle, -0.1)


class TestSymbolicGraph:
    def test_golden_mean(self, golden_mean):
        g = symbolic_transition_graph(golden_mean)
        assert set(g.edges()) == {("0", "0"), ("0", "1"), ("1", "0")}

    def test_two_point(self, two_point):
        assert set(symbolic_transition_graph(two_point).edges()) == {("0", "1"), ("1", "0")}

    def test_full_shift(self, full_shift):
        assert symbolic_transition_graph(full_shift).edge_count == 4


class TestChainComponents:
    def test_two_cycles(self):
        result = chain_components(graph((0, 1), (1, 0), (2, 2)))
        assert result.components == (frozenset({0, 1}), frozenset({2}))
        assert result.non_recurrent == frozenset()

    def test_transient_chain(self):
        result = chain_components(graph((0, 1), (1, 2), (2, 2)))
        assert result.components == (frozenset({2}),)
        assert result.non_recurrent == frozenset({0, 1})
        assert result.component_of(0) is None

    @given(random_graphs())
    def test_matches_mutual_reachability(self, data):
        _, edges = data
        if not edges:
            return
        g = graph(*edges)
        closure = nx.transitive_closure(g.nx, reflexive=False)
        on_cycle = {v for v in g.vertices if closure.has_edge(v, v)}
        expected = {
            frozenset(w for w in on_cycle if closure.has_edge(v, w) and closure.has_edge(w, v))
            for v in on_cycle
        }
        result = chain_components(g)
        assert set(result.components) == expected
        assert result.non_recurrent == frozenset(g.vertices) - on_cycle


class TestChainTransitive:
    def test_two_cycle(self):
        assert is_chain_transitive(graph((0, 1), (1, 0)))

    def test_absorbing_vertex(self):
        assert not is_chain_transitive(graph((0, 1), (1, 1)))

    def test_golden_mean(self, golden_mean):
        assert is_chain_transitive(symbolic_transition_graph(golden_mean))


class TestCyclicRotation:
    @given(st.lists(st.integers(0, 11), min_size=12, max_size=12))
    def test_map_rotates_classes_of_each_cycle(self, image):
        system = FiniteMapSystem.from_mapping(dict(enumerate(image)))
        g = delta_transition_graph(system, 0.0)
        for comp in chain_components(g).components:
            dec = cyclic_decomposition(comp, g)
            assert dec.m == len(comp)
            for i, cls in enumerate(dec.classes):
                assert {system.step(v) for v in cls} == set(dec.classes[(i + 1) % dec.m])

    def test_six_cycle(self, six_cycle):
        g = delta_transition_graph(six_cycle, 0.0)
        (comp,) = chain_components(g).components
        dec = cyclic_decomposition(comp, g)
        assert dec.classes[0] == {0}
        for i in range(6):
            assert dec.classes[(i + 1) % 6] == {six_cycle.step(i)}
