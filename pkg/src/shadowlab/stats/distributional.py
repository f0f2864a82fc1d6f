"""Distributional distance functions F_xy, F*_xy and the DC2 verdict."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from shadowlab.errors import BadParameter, HorizonMismatch
from shadowlab.stats.density import prefix_averages, window_start
from shadowlab.systems import (
    FiniteMapSystem,
    OrbitSegment,
    ShiftOrbit,
    SymbolicPoint,
    coincidence_time,
    sequence_metric,
)

DEFAULT_DEPTH = 32


def _samples(seq: OrbitSegment | Sequence[Any]) -> Sequence[Any]:
    return seq.samples if isinstance(seq, OrbitSegment) else seq


def _orbit_distances(x: SymbolicPoint, y: SymbolicPoint, horizon: int, depth: int) -> np.ndarray:
    a = np.lib.stride_tricks.sliding_window_view(x.word_array(horizon - 1 + depth), depth)
    b = np.lib.stride_tricks.sliding_window_view(y.word_array(horizon - 1 + depth), depth)
    diff = a[:horizon] != b[:horizon]
    differs = diff.any(axis=1)
    out = np.where(differs, np.exp2(-diff.argmax(axis=1).astype(float)), 0.0)
    meet = coincidence_time(x, y)
    meet = horizon if meet is None else meet
    # rows that agree to depth before the orbits meet are only bounded by 2^-depth
    out[:meet][~differs[:meet]] = 2.0**-depth
    return out


def pairwise_distances(
    xs: OrbitSegment | Sequence[Any],
    ys: OrbitSegment | Sequence[Any],
    system: Any = None,
    depth: int = DEFAULT_DEPTH,
) -> np.ndarray:
    """d(x_i, y_i) along two equally long samples."""
    a, b = _samples(xs), _samples(ys)
    if len(a) != len(b):
        raise HorizonMismatch(f"horizons differ: {len(a)} vs {len(b)}")
    n = len(a)
    if n == 0:
        return np.zeros(0)
    if isinstance(a, ShiftOrbit) and isinstance(b, ShiftOrbit):
        return _orbit_distances(a.start, b.start, n, depth)
    if system is None and isinstance(xs, OrbitSegment):
        system = xs.system
    first = a[0]
    if isinstance(first, SymbolicPoint):
        return np.array([sequence_metric(p, q, depth).value for p, q in zip(a, b)])
    if isinstance(system, FiniteMapSystem):
        table = np.asarray(system.metric)
        ia = np.array([system.index(p) for p in a])
        ib = np.array([system.index(q) for q in b])
        return table[ia, ib]
    return np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))


@dataclass(frozen=True, eq=False)
class DistributionalFunctions:
    """Tail-window estimates of the lower (F) and upper (F*) distance frequencies."""

    t_grid: tuple[float, ...]
    F: np.ndarray
    F_star: np.ndarray
    horizon: int
    tail_fraction: float

    def at(self, t: float) -> tuple[float, float]:
        i = self.t_grid.index(t)
        return float(self.F[i]), float(self.F_star[i])


def distributional_functions(
    orbit_x: OrbitSegment | Sequence[Any],
    orbit_y: OrbitSegment | Sequence[Any],
    t_grid: Sequence[float],
    tail_fraction: float = 0.5,
    system: Any = None,
    depth: int = DEFAULT_DEPTH,
) -> DistributionalFunctions:
    grid = tuple(sorted(float(t) for t in t_grid))
    distances = pairwise_distances(orbit_x, orbit_y, system, depth)
    horizon = distances.size
    if horizon < 1:
        raise BadParameter("orbits must be nonempty")
    s = window_start(horizon, tail_fraction)
    lows, highs = [], []
    for t in grid:
        freq = prefix_averages(distances < t)[s - 1 :]
        lows.append(freq.min())
        highs.append(freq.max())
    return DistributionalFunctions(grid, np.array(lows), np.array(highs), horizon, tail_fraction)


def dc2_verdict(df: DistributionalFunctions, delta: float, slack: float = 0.05) -> bool:
    """F(delta) < 1 - slack while F*(t) > 1 - slack on every positive grid t."""
    if delta not in df.t_grid:
        raise BadParameter(f"delta {delta} is not on the grid")
    low, _ = df.at(delta)
    positive = np.array(df.t_grid) > 0
    return bool(low < 1 - slack and (df.F_star[positive] > 1 - slack).all())
