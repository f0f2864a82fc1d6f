"""Desk-scale acceptance sweeps across the shadowing and statistics layers."""

from __future__ import annotations

import itertools
from functools import reduce
from math import gcd

import networkx as nx
import numpy as np
import pytest

from shadowlab.chain import decompose, symbolic_transition_graph
from shadowlab.errors import EmptySubshift
from shadowlab.shadowing import (
    PseudoOrbit,
    alternating_block_sequence,
    average_shadow_trace,
    dsp_check,
    random_pseudo_orbit,
    sft_shadow,
    verify_shadowing,
)
from shadowlab.stats import (
    distributional_functions,
    irregular_witness_sft,
    omega_bar_estimate,
)
from shadowlab.systems import Alphabet, ShiftOrbit, SymbolicSystem, orbit
from tests.helpers.systems import graph, point

pytestmark = pytest.mark.slow

DC2_GRID = [2.0**-k for k in range(9)]


def all_small_sfts(max_symbols: int = 3):
    for k in range(1, max_symbols + 1):
        alphabet = Alphabet.of("012"[:k])
        for bits in itertools.product([0, 1], repeat=k * k):
            matrix = np.array(bits).reshape(k, k)
            try:
                yield SymbolicSystem.from_matrix(alphabet, matrix)
            except EmptySubshift:
                continue


def distinct_small_sfts(max_symbols: int = 3) -> list[SymbolicSystem]:
    """Pruned one-step SFTs, one per transition matrix up to relabelling."""
    seen: set = set()
    found = []
    for system in all_small_sfts(max_symbols):
        matrix = np.array(system.allowed, dtype=np.int64)
        key = min(
            tuple(matrix[np.ix_(p, p)].ravel().tolist())
            for p in itertools.permutations(range(system.size))
        )
        if (system.size, key) not in seen:
            seen.add((system.size, key))
            found.append(system)
    return found


def skeleton_pseudo_orbits(system: SymbolicSystem, m: int, word_length: int = 8):
    """Every 2^-m pseudo-orbit read off an admissible word.

    x_i is the completion of w[i : i + m + 1], so x_{i+1} and sigma(x_i) share
    m symbols and may split at the next one.
    """
    steps = word_length - m - 1
    for w in sorted(system.words(word_length)):
        xs = [system.complete(w[i : i + m + 1]) for i in range(steps + 1)]
        yield PseudoOrbit.build(system, xs, 2.0**-m, depth=16)


def random_strongly_connected(rng: np.random.Generator, max_vertices: int = 8):
    n = int(rng.integers(1, max_vertices + 1))
    order = rng.permutation(n).tolist()
    edges = [(order[i], order[(i + 1) % n]) for i in range(n)]
    extra = int(rng.integers(0, 2 * n + 1))
    edges += [(int(u), int(v)) for u, v in rng.integers(0, n, size=(extra, 2))]
    return graph(*edges)


def partition_by_path_lengths(g, max_length: int = 64):
    """Period and classes from boolean powers of the adjacency matrix."""
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    a = np.zeros((len(verts), len(verts)), dtype=np.int64)
    for u, v in g.edges():
        a[index[u], index[v]] = 1
    powers = []
    power = np.eye(len(verts), dtype=np.int64)
    for _ in range(max_length):
        power = np.minimum(power @ a, 1)
        powers.append(power.astype(bool))
    m = reduce(gcd, (k for k, p in enumerate(powers, 1) if p.diagonal().any()))
    reach = np.eye(len(verts), dtype=bool)
    for k in range(m, max_length + 1, m):
        reach |= powers[k - 1]
    classes = {frozenset(verts[j] for j in np.flatnonzero(row)) for row in reach}
    return m, classes


def random_transitive_sfts(count: int, seed: int):
    rng = np.random.default_rng(seed)
    found = []
    while len(found) < count:
        k = int(rng.integers(2, 6))
        alphabet = Alphabet.of("01234"[:k])
        try:
            system = SymbolicSystem.from_matrix(alphabet, rng.random((k, k)) < 0.45)
        except EmptySubshift:
            continue
        if system.size > 1 and nx.is_strongly_connected(symbolic_transition_graph(system).nx):
            found.append(system)
    return found


class TestCyclicDecompositionOracle:
    def test_random_strongly_connected_graphs(self):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            g = random_strongly_connected(rng)
            m, classes = partition_by_path_lengths(g)
            dec = decompose(g)
            assert dec.m == m, sorted(g.edges())
            assert {frozenset(c) for c in dec.as_lists()} == classes, sorted(g.edges())


class TestShadowingSweeps:
    def test_family_is_deduplicated(self):
        family = distinct_small_sfts()
        assert sum(s.size == 1 for s in family) == 1
        assert sum(s.size == 2 for s in family) < 16
        assert len({(s.size, s.allowed) for s in family}) == len(family)

    def test_readout_constant_on_small_sfts(self):
        failures = []
        checked = 0
        for system in distinct_small_sfts():
            for m in (1, 2, 3, 4):
                for po in skeleton_pseudo_orbits(system, m):
                    result = sft_shadow(system, po, depth=16)
                    check = verify_shadowing(system, po, result.shadow_point, 2.0 ** (1 - m), 16)
                    checked += 1
                    if not check.passed:
                        failures.append((system.allowed, m, [p.label() for p in po.points]))
        assert failures == []
        assert checked > 1000

    def test_random_pseudo_orbits_on_small_sfts(self):
        for n, system in enumerate(distinct_small_sfts()):
            for m in (1, 2, 3, 4):
                po = random_pseudo_orbit(system, None, 8, m, seed=[n, m])
                result = sft_shadow(system, po)
                check = verify_shadowing(system, po, result.shadow_point, 2.0 ** (1 - m), 16)
                assert check.passed, (system.allowed, m)

    def test_dsp_on_random_transitive_sfts(self):
        for i, system in enumerate(random_transitive_sfts(20, seed=11)):
            report = dsp_check(system, 3, trials=100, length=32, seed=i)
            assert all(c.all_same_class for c in report.classes)
            assert report.uniform
            assert report.passed


class TestAverageShadowing:
    def test_two_fixed_points(self, full_shift):
        horizon = 2**14
        zero, one = point(full_shift, "(0)"), point(full_shift, "(1)")
        xs = alternating_block_sequence(zero, one, horizon)
        trace = average_shadow_trace(full_shift, xs)
        assert trace.final_error <= 0.02
        assert trace.class_preserved
        est = omega_bar_estimate(orbit(full_shift, trace.point, horizon), theta=0.01)
        assert {p.word(5) for p in est.points} == {(0,) * 5, (1,) * 5}


class TestIrregularity:
    def test_full_shift_witness(self, full_shift):
        witness = irregular_witness_sft(full_shift, block_ratio=2, horizon=2**16, seed=0)
        assert witness.report.oscillation >= 1 / 3 - 0.05


class TestOmegaBarAgainstDistributions:
    def test_omega_bar_and_dc2_agree(self, full_shift):
        horizon = 4096
        zero, one = point(full_shift, "(0)"), point(full_shift, "(1)")
        flip, triple = point(full_shift, "(01)"), point(full_shift, "(001)")
        periodic = [zero, one, flip, triple]
        sequences = [list(ShiftOrbit(p, horizon)) for p in periodic]
        sequences += [
            alternating_block_sequence(a, b, horizon)
            for a, b in itertools.permutations(periodic, 2)
        ]
        candidates = [zero, one, flip, flip.shift(1), triple, triple.shift(1), triple.shift(2)]
        selected = [
            set(omega_bar_estimate(s, candidates, theta=0.01, system=full_shift).selected)
            for s in sequences
        ]
        pairs = list(itertools.combinations_with_replacement(range(len(sequences)), 2))
        assert len(pairs) == 136
        differing = 0
        for i, j in pairs:
            df = distributional_functions(sequences[i], sequences[j], DC2_GRID)
            if selected[i] - selected[j] or selected[j] - selected[i]:
                differing += 1
                assert df.F.min() < 0.95, (i, j)
            if (df.F_star > 0.95).all():
                assert selected[i] & selected[j], (i, j)
        assert differing >= 100
