"""Tests for SFT construction, words and admissible points."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.errors import BadWord, EmptySubshift, SchemaError
from shadowlab.systems import (
    Alphabet,
    SymbolicSystem,
    sft_from_forbidden_words,
    spectral_radius,
    topological_entropy,
)
from tests.helpers.systems import BINARY


class TestForbiddenWords:
    def test_golden_mean(self, golden_mean):
        assert golden_mean.matrix.astype(int).tolist() == [[1, 1], [1, 0]]
        assert golden_mean.memory == 1
        assert golden_mean.alphabet.symbols == ("0", "1")

    def test_full_shift(self, full_shift):
        assert full_shift.matrix.all()
        assert full_shift.size == 2

    def test_two_point(self, two_point):
        assert two_point.matrix.astype(int).tolist() == [[0, 1], [1, 0]]

    def test_every_symbol_forbidden(self):
        with pytest.raises(EmptySubshift):
            sft_from_forbidden_words(BINARY, ["0", "1"])

    def test_empty_forbidden_word(self):
        with pytest.raises(BadWord):
            sft_from_forbidden_words(BINARY, [""])

    def test_unknown_symbol(self):
        with pytest.raises(BadWord):
            sft_from_forbidden_words(BINARY, ["2"])

    def test_longer_words_recode_to_blocks(self):
        system = sft_from_forbidden_words(BINARY, ["000"])
        assert system.memory == 2
        assert system.alphabet.symbols == ("00", "01", "10", "11")
        assert not system.is_allowed(0, 0)
        assert ("0", "0", "0") not in system.language(3)
        assert len(system.language(3)) == 7

    def test_language_matches_brute_force(self, two_point):
        assert two_point.language(4) == {("0", "1", "0", "1"), ("1", "0", "1", "0")}

    def test_state_words(self, golden_mean):
        assert golden_mean.words(3) == {(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)}

    def test_multi_character_blocks_are_joined(self):
        alphabet = Alphabet.of(["ab", "c"])
        system = sft_from_forbidden_words(alphabet, [["ab", "ab", "ab"]])
        assert "ab|c" in system.alphabet.symbols


class TestFromMatrix:
    def test_prunes_dead_symbols(self):
        system = SymbolicSystem.from_matrix(Alphabet.of("abc"), [[1, 1, 0], [1, 1, 0], [0, 0, 0]])
        assert system.alphabet.symbols == ("a", "b")
        assert len(system.base_alphabet) == 3

    def test_prunes_transient_chain(self):
        # a -> b -> c -> c: a has no predecessor, so only c survives
        system = SymbolicSystem.from_matrix(Alphabet.of("abc"), [[0, 1, 0], [0, 0, 1], [0, 0, 1]])
        assert system.alphabet.symbols == ("c",)

    def test_all_zero_is_empty(self):
        with pytest.raises(EmptySubshift):
            SymbolicSystem.from_matrix(BINARY, [[0, 0], [0, 0]])

    def test_wrong_shape(self):
        with pytest.raises(SchemaError):
            SymbolicSystem.from_matrix(BINARY, [[1, 1, 1]])


class TestPoints:
    def test_admissible_point(self, golden_mean):
        p = golden_mean.point("", "01")
        assert golden_mean.contains(p)

    def test_inadmissible_period(self, golden_mean):
        with pytest.raises(BadWord):
            golden_mean.point("", "1")

    def test_inadmissible_prefix(self, golden_mean):
        with pytest.raises(BadWord):
            golden_mean.point("11", "0")

    def test_complete_takes_least_successors(self, golden_mean):
        p = golden_mean.complete([1])
        assert p.label() == "1(0)"

    def test_periodic_points(self, full_shift):
        labels = [p.label() for p in full_shift.periodic_points(2)]
        assert labels == ["(0)", "(01)", "(10)", "(1)"]

    def test_step_is_shift(self, full_shift):
        p = full_shift.point("1", "0")
        assert full_shift.step(p) == full_shift.point("", "0")

    def test_project_reads_base_symbols(self):
        system = sft_from_forbidden_words(BINARY, ["000"])
        p = system.periodic_points(3)[0]
        assert len(system.project(p, 6)) == 6
        assert all(s in ("0", "1") for s in system.project(p, 6))


class TestEntropy:
    def test_full_shift(self, full_shift):
        assert topological_entropy(full_shift) == pytest.approx(math.log(2), abs=1e-9)

    def test_golden_mean(self, golden_mean):
        phi = (1 + math.sqrt(5)) / 2
        assert topological_entropy(golden_mean) == pytest.approx(math.log(phi), abs=1e-9)

    def test_two_point_has_zero_entropy(self, two_point):
        assert topological_entropy(two_point) == pytest.approx(0.0, abs=1e-9)

    def test_spectral_radius_of_periodic_matrix(self):
        cycle = np.roll(np.eye(4), 1, axis=1)
        assert spectral_radius(cycle) == pytest.approx(1.0, abs=1e-9)

    def test_spectral_radius_matches_eigvals(self):
        a = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=float)
        expected = max(abs(np.linalg.eigvals(a)))
        assert spectral_radius(a) == pytest.approx(expected, abs=1e-8)


def extendable_words(chars: str, forbidden: list[str], n: int) -> set[tuple[str, ...]]:
    """Length-n windows of bi-infinite sequences avoiding ``forbidden``, by brute force.

    Works on words of length L = max(n, 3): every forbidden word fits in an
    (L + 1)-window, so a bi-infinite sequence avoids them exactly when each
    consecutive pair of L-windows does.
    """
    length = max(n, 3)

    def clean(w: str) -> bool:
        return not any(f in w for f in forbidden)

    alive = {"".join(w) for w in itertools.product(chars, repeat=length) if clean("".join(w))}
    while True:
        keep = {
            w
            for w in alive
            if any(clean(w + a) and (w[1:] + a) in alive for a in chars)
            and any(clean(b + w) and (b + w[:-1]) in alive for b in chars)
        }
        if keep == alive:
            break
        alive = keep
    return {tuple(w[:n]) for w in alive}


@st.composite
def forbidden_sets(draw):
    chars = draw(st.sampled_from(["01", "012"]))
    word = st.text(alphabet=chars, min_size=1, max_size=4)
    return chars, draw(st.lists(word, max_size=4, unique=True))


class TestRecodingAgainstBruteForce:
    @settings(max_examples=40, deadline=None)
    @given(forbidden_sets(), st.integers(1, 8))
    def test_language(self, data, n):
        chars, forbidden = data
        expected = extendable_words(chars, forbidden, n)
        if not expected:
            with pytest.raises(EmptySubshift):
                sft_from_forbidden_words(Alphabet.of(chars), forbidden)
            return
        system = sft_from_forbidden_words(Alphabet.of(chars), forbidden)
        assert system.language(n) == expected

    def test_memory_three_words(self):
        system = sft_from_forbidden_words(Alphabet.of("012"), ["0000", "12"])
        assert system.memory == 3
        for n in range(1, 7):
            assert system.language(n) == extendable_words("012", ["0000", "12"], n)
