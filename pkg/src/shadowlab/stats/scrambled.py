"""Finite witnesses for omega-bar scrambled families."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Callable, Sequence

import numpy as np

from shadowlab.core.trials import run_trials
from shadowlab.errors import BadParameter
from shadowlab.stats.density import upper_lower_density
from shadowlab.stats.omega import (
    BallVisits,
    OmegaBarEstimate,
    cylinder_length,
    omega_bar_estimate,
    resolve_epsilon,
    window_words,
)
from shadowlab.systems import (
    FiniteMapSystem,
    IntervalMapSystem,
    SymbolicPoint,
    orbit,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairRecord:
    first: int
    second: int
    difference_nonempty: bool
    intersection_nonempty: bool
    nonperiodic_found: bool

    @property
    def passed(self) -> bool:
        return self.difference_nonempty and self.intersection_nonempty and self.nonperiodic_found


@dataclass(frozen=True, eq=False)
class ScrambledWitness:
    points: tuple[Any, ...]
    estimates: tuple[OmegaBarEstimate, ...]
    pairs: tuple[PairRecord, ...]
    theta: float
    epsilon: float
    periodicity_bound: int

    @property
    def verdict(self) -> bool:
        return all(p.passed for p in self.pairs)


def is_periodic_point(system: Any, point: Any, bound: int) -> bool:
    """Whether f^p(point) == point for some 1 <= p <= bound."""
    if isinstance(point, SymbolicPoint):
        return point.is_periodic and point.period_length <= bound
    if isinstance(system, FiniteMapSystem):
        cycle = next((c for c in system.cycles() if point in c), None)
        return cycle is not None and len(cycle) <= bound
    if isinstance(system, IntervalMapSystem):
        y = float(point)
        for _ in range(bound):
            y = system.step(y)
            if abs(y - float(point)) <= system.tolerance:
                return True
        return False
    raise BadParameter(f"cannot decide periodicity for {type(system).__name__}")


def _has_period(
    windows: np.ndarray, bound: int, close: Callable[[np.ndarray, np.ndarray], np.ndarray]
) -> np.ndarray:
    found = np.zeros(len(windows), dtype=bool)
    for p in range(1, min(bound, windows.shape[1] - 1) + 1):
        found |= close(windows[:, p:], windows[:, :-p]).all(axis=1)
    return found


def periodic_visits(system: Any, samples: Sequence[Any], bound: int, epsilon: float) -> np.ndarray:
    """Times at which the orbit looks periodic with some period p <= ``bound``.

    Symbolic samples: the next 2*bound + 1 symbols have period p. Interval
    samples: the next 2*bound + 1 values repeat within epsilon after p steps;
    times too close to the horizon to be checked count as not periodic. Finite
    labels are tested exactly.
    """
    horizon = len(samples)
    span = 2 * bound + 1
    if isinstance(samples[0], SymbolicPoint):
        return _has_period(window_words(samples, span), bound, np.equal)
    if isinstance(system, IntervalMapSystem):
        tol = max(epsilon, system.tolerance)
        out = np.zeros(horizon, dtype=bool)
        if horizon >= span:
            windows = np.lib.stride_tricks.sliding_window_view(
                np.asarray(samples, dtype=float), span
            )
            out[: len(windows)] = _has_period(windows, bound, lambda a, b: np.abs(a - b) < tol)
        return out
    cache: dict[Any, bool] = {}
    for p in samples:
        if p not in cache:
            cache[p] = is_periodic_point(system, p, bound)
    return np.fromiter((cache[p] for p in samples), dtype=bool, count=horizon)


def _shared_candidates(samples: list[Any], epsilon: float, system: Any) -> list:
    """Union of the default candidates of every orbit, one per ball."""
    pooled: list[Any] = []
    keys: set = set()
    for seq in samples:
        visits = BallVisits(seq, epsilon, system)
        for y in visits.default_candidates():
            key = tuple(y.word(cylinder_length(epsilon))) if visits.mode == "cylinder" else y
            if key not in keys:
                keys.add(key)
                pooled.append(y)
    return pooled


def scrambled_family_check(
    system: Any,
    points: Sequence[Any],
    horizon: int,
    theta: float = 0.01,
    epsilon: float | None = None,
    periodicity_bound: int = 64,
    tail_fraction: float = 0.5,
    candidates: Sequence[Any] | None = None,
    max_concurrent: int = 1,
) -> ScrambledWitness:
    """Check the three omega-bar scrambling conditions on every ordered pair.

    (1) omega-bar(x) minus omega-bar(y) is nonempty, (2) the two sets meet,
    (3) omega-bar(x) holds a point that is not periodic with period <= the bound.

    Condition (3) is read per ball: a selected ball counts as periodic when its
    visits at times the orbit looks periodic (``periodic_visits``) alone have
    upper density above theta. The ball's representative plays no part.
    """
    if len(points) < 2:
        raise BadParameter("family must contain at least two points")
    orbits = run_trials(lambda i: orbit(system, points[i], horizon), len(points), max_concurrent)
    epsilon = resolve_epsilon(orbits[0].samples, epsilon, system)
    if candidates is None:
        candidates = _shared_candidates([o.samples for o in orbits], epsilon, system)
    estimates = run_trials(
        lambda i: omega_bar_estimate(orbits[i], candidates, epsilon, theta, tail_fraction),
        len(points),
        max_concurrent,
    )
    selected = [set(e.selected) for e in estimates]
    periodic = run_trials(
        lambda i: periodic_visits(system, orbits[i].samples, periodicity_bound, epsilon),
        len(points),
        max_concurrent,
    )
    nonperiodic = []
    for i, sel in enumerate(selected):
        visits = BallVisits(orbits[i].samples, epsilon, system)
        densities = [
            upper_lower_density(visits.mask(candidates[k]) & periodic[i], horizon, tail_fraction)
            for k in sel
        ]
        nonperiodic.append(any(d.upper <= theta for d in densities))
    pairs = tuple(
        PairRecord(
            i,
            j,
            bool(selected[i] - selected[j]),
            bool(selected[i] & selected[j]),
            nonperiodic[i],
        )
        for i, j in permutations(range(len(points)), 2)
    )
    witness = ScrambledWitness(
        tuple(points), tuple(estimates), pairs, theta, epsilon, periodicity_bound
    )
    logger.info("scrambled check on %d points: verdict %s", len(points), witness.verdict)
    return witness
