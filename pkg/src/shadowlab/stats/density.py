"""Prefix densities and the tail-window stand-ins for limsup/liminf."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from shadowlab.errors import BadParameter


def prefix_averages(values: Iterable[float] | np.ndarray) -> np.ndarray:
    """(1/n) * sum_{i<n} values[i] for n = 1..len(values)."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return np.zeros(0)
    return np.cumsum(v) / np.arange(1, v.size + 1)


def window_start(horizon: int, tail_fraction: float) -> int:
    """Least n >= 1 inside the window n >= (1 - tail_fraction) * horizon."""
    if not 0 < tail_fraction <= 1:
        raise BadParameter(f"tail_fraction must lie in (0, 1], got {tail_fraction}")
    return max(1, math.ceil((1.0 - tail_fraction) * horizon - 1e-9))


def tail_extremes(curve: np.ndarray, tail_fraction: float) -> tuple[float, float]:
    """(max, min) of curve[n-1] over the tail window."""
    s = window_start(len(curve), tail_fraction)
    window = curve[s - 1 :]
    return float(window.max()), float(window.min())


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    horizon: int
    prefix_densities: np.ndarray
    upper: float
    lower: float
    tail_fraction: float

    @property
    def window_start(self) -> int:
        return window_start(self.horizon, self.tail_fraction)


def indicator(indices: Iterable[int] | np.ndarray, horizon: int) -> np.ndarray:
    """Boolean mask of length ``horizon`` from an index set or a mask."""
    if isinstance(indices, np.ndarray):
        arr = indices
    else:
        items = sorted(indices) if isinstance(indices, (set, frozenset)) else list(indices)
        arr = np.asarray(items)
    if arr.dtype == bool:
        if arr.shape != (horizon,):
            raise BadParameter(f"mask has shape {arr.shape}, expected ({horizon},)")
        return arr
    arr = arr.astype(np.int64).ravel()
    if arr.size and (arr.min() < 0 or arr.max() >= horizon):
        raise BadParameter(f"indices must lie in 0..{horizon - 1}")
    mask = np.zeros(horizon, dtype=bool)
    mask[arr] = True
    return mask


def upper_lower_density(
    indices: Iterable[int] | np.ndarray, horizon: int, tail_fraction: float = 0.5
) -> DensityEstimate:
    if horizon < 2:
        raise BadParameter(f"horizon must be >= 2, got {horizon}")
    mask = indicator(indices, horizon)
    densities = prefix_averages(mask)
    upper, lower = tail_extremes(densities, tail_fraction)
    return DensityEstimate(horizon, densities, upper, lower, tail_fraction)
