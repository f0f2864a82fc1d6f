"""Tests for the omega-bar scrambled family check."""

from __future__ import annotations

import pytest

from shadowlab.errors import BadParameter
from shadowlab.stats import is_periodic_point, periodic_visits, scrambled_family_check
from shadowlab.systems import SymbolicPoint, orbit
from tests.helpers.systems import BINARY, block_point, point


class TestIsPeriodicPoint:
    def test_symbolic(self, full_shift):
        x = point(full_shift, "(01)")
        assert not is_periodic_point(full_shift, x, 1)
        assert is_periodic_point(full_shift, x, 2)
        assert not is_periodic_point(full_shift, point(full_shift, "1(0)"), 64)

    def test_finite(self, eventual_cycle):
        assert not is_periodic_point(eventual_cycle, 0, 64)
        assert is_periodic_point(eventual_cycle, 1, 2)
        assert not is_periodic_point(eventual_cycle, 1, 1)

    def test_interval_fixed_point(self, tent):
        assert is_periodic_point(tent, 0.0, 1)


class TestScrambledFamily:
    def test_eventual_cycle_is_not_scrambled(self, eventual_cycle):
        witness = scrambled_family_check(eventual_cycle, [0, 1], horizon=1000)
        assert witness.epsilon == 0.0
        assert [p.difference_nonempty for p in witness.pairs] == [False, False]
        assert all(p.intersection_nonempty for p in witness.pairs)
        assert not witness.verdict

    def test_block_pair_fails_only_on_periodicity(self, full_shift):
        x = block_point([(0,), (1,)], 4200)
        y = block_point([(0,), (0, 1)], 4200)
        candidates = [point(full_shift, w) for w in ("(0)", "(1)", "(01)", "(10)")]
        witness = scrambled_family_check(
            full_shift, [x, y], horizon=4096, candidates=candidates, max_concurrent=2
        )
        forward = next(p for p in witness.pairs if (p.first, p.second) == (0, 1))
        assert forward.difference_nonempty
        assert forward.intersection_nonempty
        assert not forward.nonperiodic_found
        assert not forward.passed
        assert not witness.verdict

    def test_block_pair_selections(self, full_shift):
        x = block_point([(0,), (1,)], 4200)
        y = block_point([(0,), (0, 1)], 4200)
        candidates = [point(full_shift, w) for w in ("(0)", "(1)", "(01)", "(10)")]
        witness = scrambled_family_check(full_shift, [x, y], horizon=4096, candidates=candidates)
        assert set(witness.estimates[0].selected) == {0, 1}
        assert set(witness.estimates[1].selected) == {0, 2, 3}

    def test_single_point(self, eventual_cycle):
        with pytest.raises(BadParameter):
            scrambled_family_check(eventual_cycle, [0], horizon=1000)


def thue_morse_point(length: int) -> SymbolicPoint:
    return SymbolicPoint(BINARY, tuple(bin(i).count("1") % 2 for i in range(length)), (0,))


class TestPeriodicVisits:
    def test_block_point_windows(self, full_shift):
        x = block_point([(0,), (1,)], 600)
        visits = periodic_visits(full_shift, orbit(full_shift, x, 400).samples, 8, 0.0625)
        # 0^16 1^64 0^256 ...: a 17-symbol window is periodic unless it straddles a switch
        assert not visits[0]
        assert visits[16:63].all()
        assert not visits[64:80].any()
        assert visits[80:319].all()

    def test_overlap_free_word_never_looks_periodic(self, full_shift):
        x = thue_morse_point(2048)
        assert not periodic_visits(full_shift, orbit(full_shift, x, 1024).samples, 64, 0.0).any()

    def test_finite_labels(self, eventual_cycle):
        visits = periodic_visits(eventual_cycle, [0, 1, 2, 1], 64, 0.0)
        assert visits.tolist() == [False, True, True, True]

    def test_interval_fixed_point_and_unchecked_tail(self, tent):
        visits = periodic_visits(tent, [0.0] * 20, 4, 1 / 64)
        assert visits[:12].all()
        assert not visits[12:].any()


class TestScrambledDefaultCandidates:
    def test_periodic_omega_bar_sets_report_no_nonperiodic_point(self, full_shift):
        x = block_point([(0,), (1,)], 4200)
        y = block_point([(0,), (0, 1)], 4200)
        witness = scrambled_family_check(full_shift, [x, y], horizon=4096)
        assert all(e.selected for e in witness.estimates)
        assert not any(p.nonperiodic_found for p in witness.pairs)
        assert not witness.verdict

    def test_overlap_free_orbit_reports_nonperiodic_point(self, full_shift):
        tm = thue_morse_point(8192)
        zero = point(full_shift, "(0)")
        witness = scrambled_family_check(full_shift, [tm, zero], horizon=4096)
        forward = next(p for p in witness.pairs if (p.first, p.second) == (0, 1))
        backward = next(p for p in witness.pairs if (p.first, p.second) == (1, 0))
        assert forward.nonperiodic_found
        assert forward.difference_nonempty
        assert not backward.nonperiodic_found
