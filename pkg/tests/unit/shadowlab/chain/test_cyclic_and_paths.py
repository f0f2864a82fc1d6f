"""Tests for the period, cyclic classes, chain relations and path lengths."""

from __future__ import annotations

import itertools
from functools import reduce
from math import gcd

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.chain import (
    TransitionGraph,
    chain_equivalent,
    chain_proximal,
    cycle_lengths,
    cyclic_decomposition,
    decompose,
    frobenius_number,
    graph_period,
    is_chain_mixing,
    is_chain_transitive,
    path_of_length,
    symbolic_transition_graph,
    uniform_chain_bound,
)
from shadowlab.errors import (
    BadParameter,
    DifferentComponents,
    NotChainTransitive,
    NotStronglyConnected,
)
from shadowlab.systems import Alphabet, sft_from_forbidden_words
from tests.helpers.systems import graph

TWO_CYCLE = ((0, 1), (1, 0))


@st.composite
def strongly_connected(draw, max_vertices: int = 6):
    """A Hamiltonian cycle plus random extra edges."""
    n = draw(st.integers(1, max_vertices))
    ring = [(i, (i + 1) % n) for i in range(n)]
    pairs = list(itertools.product(range(n), repeat=2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n))
    return graph(*ring, *extra)


def reachable_lengths(g, x, y, max_length: int) -> set[int]:
    verts = list(g.vertices)
    a = np.zeros((len(verts), len(verts)), dtype=np.int64)
    for u, v in g.edges():
        a[verts.index(u), verts.index(v)] = 1
    lengths = set()
    power = np.eye(len(verts), dtype=np.int64)
    for k in range(1, max_length + 1):
        power = np.minimum(power @ a, 1)
        if power[verts.index(x), verts.index(y)]:
            lengths.add(k)
    return lengths


class TestPeriod:
    def test_two_cycle(self):
        assert graph_period({0, 1}, graph(*TWO_CYCLE)) == 2

    def test_golden_mean(self, golden_mean):
        g = symbolic_transition_graph(golden_mean)
        assert graph_period(g.vertices, g) == 1

    def test_cycles_of_length_two_and_three(self):
        g = graph((0, 1), (1, 2), (2, 0), (0, 2))
        assert graph_period({0, 1, 2}, g) == 1

    def test_not_strongly_connected(self):
        with pytest.raises(NotStronglyConnected):
            graph_period({0, 1}, graph((0, 1), (1, 1)))

    def test_single_vertex_without_loop(self):
        with pytest.raises(NotStronglyConnected):
            graph_period({1}, graph((0, 1), (1, 0)))


class TestCyclicDecomposition:
    def test_two_cycle(self):
        dec = decompose(graph(*TWO_CYCLE))
        assert dec.m == 2
        assert dec.as_lists() == [[0], [1]]

    def test_four_cycle(self):
        dec = decompose(graph((0, 1), (1, 2), (2, 3), (3, 0)))
        assert dec.m == 4
        assert dec.as_lists() == [[0], [1], [2], [3]]

    def test_diamond(self):
        dec = decompose(graph((0, 1), (0, 3), (1, 2), (3, 2), (2, 0)))
        assert dec.m == 3
        assert dec.as_lists() == [[0], [1, 3], [2]]

    def test_component_of_larger_graph(self):
        g = graph((0, 1), (1, 0), (1, 2), (2, 2))
        dec = cyclic_decomposition({0, 1}, g)
        assert dec.m == 2
        assert dec.residue(1) == 1

    def test_not_chain_transitive(self):
        with pytest.raises(NotChainTransitive):
            decompose(graph((0, 1), (1, 1)))

    @given(strongly_connected())
    def test_edges_advance_one_class(self, g):
        dec = decompose(g)
        for u, v in g.edges():
            assert dec.class_of[v] == (dec.class_of[u] + 1) % dec.m
        assert dec.class_of[min(g.vertices)] == 0


class TestChainRelations:
    def test_equivalent_reflexive(self):
        g = graph(*TWO_CYCLE)
        assert chain_equivalent(g, decompose(g), 0, 0)

    def test_equivalent_odd_lengths_only(self):
        g = graph(*TWO_CYCLE)
        assert not chain_equivalent(g, decompose(g), 0, 1)

    def test_equivalent_unknown_vertex(self):
        g = graph(*TWO_CYCLE)
        with pytest.raises(DifferentComponents):
            chain_equivalent(g, decompose(g), 0, 9)

    def test_proximal_diagonal(self):
        assert chain_proximal(graph(*TWO_CYCLE), 1, 1)

    def test_two_cycle_pair_never_meets(self):
        assert not chain_proximal(graph(*TWO_CYCLE), 0, 1)

    @settings(max_examples=60)
    @given(strongly_connected())
    def test_equivalence_by_path_lengths(self, g):
        dec = decompose(g)
        for x, y in itertools.product(g.vertices, repeat=2):
            lengths = reachable_lengths(g, x, y, 36)
            brute = x == y or any(k % dec.m == 0 for k in lengths)
            assert chain_equivalent(g, dec, x, y) == brute

    @settings(max_examples=60)
    @given(strongly_connected())
    def test_proximal_iff_equivalent(self, g):
        dec = decompose(g)
        for x, y in itertools.product(g.vertices, repeat=2):
            assert chain_proximal(g, x, y) == chain_equivalent(g, dec, x, y)


class TestMixing:
    def test_full_shift(self, full_shift):
        assert is_chain_mixing(symbolic_transition_graph(full_shift))

    def test_two_cycle(self):
        assert not is_chain_mixing(graph(*TWO_CYCLE))

    def test_golden_mean(self, golden_mean):
        assert is_chain_mixing(symbolic_transition_graph(golden_mean))


class TestPathOfLength:
    def test_two_cycle_even(self):
        assert path_of_length(graph(*TWO_CYCLE), 0, 0, 2) == [0, 1, 0]

    def test_two_cycle_parity(self):
        assert path_of_length(graph(*TWO_CYCLE), 0, 0, 3) is None

    def test_golden_mean_closed_path(self, golden_mean):
        g = symbolic_transition_graph(golden_mean)
        assert path_of_length(g, "1", "1", 5) == ["1", "0", "0", "0", "0", "1"]

    def test_zero_length(self):
        g = graph(*TWO_CYCLE)
        assert path_of_length(g, 0, 0, 0) == [0]
        assert path_of_length(g, 0, 1, 0) is None

    def test_negative_length(self):
        with pytest.raises(BadParameter):
            path_of_length(graph(*TWO_CYCLE), 0, 0, -1)

    @given(strongly_connected(), st.integers(0, 12))
    def test_walks_use_edges(self, g, k):
        x, y = g.vertices[0], g.vertices[-1]
        path = path_of_length(g, x, y, k)
        if path is None:
            assert k not in reachable_lengths(g, x, y, k)
            return
        assert len(path) == k + 1
        assert path[0] == x and path[-1] == y
        assert all(g.has_edge(u, v) for u, v in zip(path, path[1:]))


class TestFrobenius:
    def test_two_and_three(self):
        assert frobenius_number([2, 3]) == 1

    def test_three_and_five(self):
        assert frobenius_number([3, 5]) == 7

    def test_one_represents_everything(self):
        assert frobenius_number([1, 4]) == -1

    def test_common_divisor(self):
        with pytest.raises(BadParameter):
            frobenius_number([4, 6])


class TestUniformChainBound:
    def test_two_cycle(self):
        g = graph(*TWO_CYCLE)
        bound = uniform_chain_bound(g, decompose(g))
        assert bound.N == 1
        assert bound.m == 2
        assert bound.certificate == "all_n"

    def test_full_shift(self, full_shift):
        g = symbolic_transition_graph(full_shift)
        assert uniform_chain_bound(g, decompose(g)).N == 1

    def test_cycle_lengths_two_and_three(self):
        g = graph((0, 1), (1, 0), (1, 2), (2, 0))
        bound = uniform_chain_bound(g, decompose(g))
        assert bound.m == 1
        assert bound.pair_bounds[(0, 0)] == 2
        assert bound.witness(g, 0, 0, 1) is None
        assert bound.witness(g, 0, 0, 2) is not None

    @settings(max_examples=40)
    @given(strongly_connected())
    def test_bound_is_tight_and_sufficient(self, g):
        dec = decompose(g)
        bound = uniform_chain_bound(g, dec)
        for (x, y), n_xy in bound.pair_bounds.items():
            for n in range(n_xy, n_xy + 6):
                assert path_of_length(g, x, y, dec.m * n) is not None
            if n_xy > 1:
                assert path_of_length(g, x, y, dec.m * (n_xy - 1)) is None
        assert bound.N == max(bound.pair_bounds.values())


def primitive(g) -> bool:
    """Some power A^k with k = (n - 1)^2 + 1 is entrywise positive."""
    verts = list(g.vertices)
    n = len(verts)
    a = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges():
        a[verts.index(u), verts.index(v)] = 1
    power = np.eye(n, dtype=np.int64)
    for _ in range((n - 1) ** 2 + 1):
        power = np.minimum(power @ a, 1)
    return bool(power.all())


def all_graphs(max_vertices: int):
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.product(range(n), repeat=2))
        for mask in range(2 ** len(pairs)):
            edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
            yield TransitionGraph.from_edges(edges, vertices=range(n))


def mixing_by_classes(g) -> bool:
    if not is_chain_transitive(g):
        return False
    dec = decompose(g)
    return all(chain_equivalent(g, dec, x, y) for x in g.vertices for y in g.vertices)


class TestCycleLengths:
    def test_two_and_three(self):
        assert cycle_lengths(graph((0, 1), (1, 0), (1, 2), (2, 0))) == [2, 3]

    def test_longer_bound_lists_sums(self):
        g = graph((0, 1), (1, 0), (1, 2), (2, 0))
        assert cycle_lengths(g, bound=6) == [2, 3, 4, 5, 6]

    def test_self_loop(self, golden_mean):
        assert cycle_lengths(symbolic_transition_graph(golden_mean)) == [1, 2]

    @settings(max_examples=60)
    @given(strongly_connected())
    def test_agrees_with_simple_cycles(self, g):
        simple = {len(c) for c in nx.simple_cycles(g.nx)}
        lengths = cycle_lengths(g)
        assert simple <= set(lengths)
        assert reduce(gcd, lengths) == reduce(gcd, simple) == graph_period(g.vertices, g)

    @settings(max_examples=60)
    @given(strongly_connected())
    def test_classes_follow_period(self, g):
        dec = cyclic_decomposition(g.vertices, g)
        assert dec.m == graph_period(g.vertices, g)
        assert len(dec.classes) == dec.m


class TestRecodedBound:
    def test_memory_three_recoding(self):
        system = sft_from_forbidden_words(Alphabet.of("012"), ["0000"])
        g = symbolic_transition_graph(system)
        assert len(g) == 26
        bound = uniform_chain_bound(g, decompose(g))
        assert bound.m == 1
        assert bound.certificate == "all_n"
        assert bound.N == max(bound.pair_bounds.values())


class TestMixingCharacterization:
    def test_exhaustive_small_graphs(self):
        count = 0
        for g in all_graphs(3):
            mixing = is_chain_mixing(g)
            assert mixing == mixing_by_classes(g)
            assert mixing == (is_chain_transitive(g) and primitive(g))
            count += 1
        assert count == 2 + 16 + 512

    @settings(max_examples=100)
    @given(strongly_connected())
    def test_strongly_connected_graphs(self, g):
        assert is_chain_mixing(g) == mixing_by_classes(g) == primitive(g)
