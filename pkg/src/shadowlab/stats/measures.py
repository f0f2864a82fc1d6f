"""Empirical and invariant measures on finite maps; the measure center."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any

import numpy as np

from shadowlab.errors import AnalysisError, BadParameter, NotMinimal
from shadowlab.stats.omega import omega_bar_exact_finite
from shadowlab.systems import FiniteMapSystem, OrbitSegment

logger = logging.getLogger(__name__)

NULL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EmpiricalMeasure:
    """(1/H) * sum_{i<H} delta_{x_i}."""

    atoms: dict[Any, float]
    horizon: int

    @property
    def support(self) -> frozenset:
        return frozenset(p for p, w in self.atoms.items() if w > 0)

    def weight(self, point: Any) -> float:
        return self.atoms.get(point, 0.0)


def empirical_measure(orbit: OrbitSegment) -> EmpiricalMeasure:
    if orbit.horizon < 1:
        raise BadParameter("horizon must be >= 1")
    counts = Counter(orbit.samples)
    return EmpiricalMeasure({p: c / orbit.horizon for p, c in counts.items()}, orbit.horizon)


def invariant_supports_finite(system: FiniteMapSystem) -> frozenset:
    """Union of the supports of all invariant probability vectors.

    Invariant vectors solve mu P = mu for the 0/1 transition matrix P of the
    map; the union of the supports of a null-space basis of P^T - I is the
    union of the supports of all of them.
    """
    n = system.size
    p = np.zeros((n, n))
    p[np.arange(n), list(system.image)] = 1.0
    _, sing, vh = np.linalg.svd(p.T - np.eye(n))
    null = vh[sing < NULL_TOLERANCE]
    support = (np.abs(null) > NULL_TOLERANCE).any(axis=0)
    return frozenset(system.points[i] for i in np.flatnonzero(support))


def recurrent_points_finite(system: FiniteMapSystem) -> frozenset:
    """{x : x in omega-bar(x, f)}, point by point."""
    return frozenset(p for p in system.points if p in omega_bar_exact_finite(system, p))


def measure_center_finite(system: FiniteMapSystem) -> frozenset:
    """Union of cycles, cross-checked against the two other characterizations."""
    cycles = frozenset(p for cyc in system.cycles() for p in cyc)
    recurrent = recurrent_points_finite(system)
    supports = invariant_supports_finite(system)
    if not cycles == recurrent == supports:
        raise AnalysisError(
            f"measure center oracles disagree: cycles {len(cycles)}, "
            f"recurrent {len(recurrent)}, supports {len(supports)} points",
            stage="measure_center",
        )
    logger.debug("measure center: %d of %d points", len(cycles), system.size)
    return cycles


def uniform_recurrence_gap(system: FiniteMapSystem, epsilon: float = 0.0) -> int:
    """Least k such that every k consecutive orbit points come within epsilon of every point."""
    cycles = system.cycles()
    if len(cycles) != 1 or len(cycles[0]) != system.size:
        raise NotMinimal(f"map has {len(cycles)} cycles over {system.size} points")
    cycle = cycles[0]
    n = len(cycle)
    gap = 1
    for target in system.points:
        hits = [t for t, p in enumerate(cycle) if system.distance(p, target) <= epsilon]
        # cyclic gaps between consecutive hits, including the wrap
        wrapped = hits[1:] + [hits[0] + n]
        gap = max(gap, max(b - a for a, b in zip(hits, wrapped)))
    return gap

