"""Continuous piecewise-linear maps of [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from shadowlab.errors import SchemaError

STEP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class IntervalMapSystem:
    """f interpolates ``values`` linearly between consecutive ``breakpoints``."""

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    kind = "interval_pl"
    tolerance = STEP_TOLERANCE

    def __post_init__(self) -> None:
        b = np.asarray(self.breakpoints, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if b.size < 2:
            raise SchemaError("need at least two breakpoints", "breakpoints")
        if b[0] != 0.0 or b[-1] != 1.0:
            raise SchemaError("breakpoints must start at 0 and end at 1", "breakpoints")
        if (np.diff(b) <= 0).any():
            raise SchemaError("breakpoints must be strictly increasing", "breakpoints")
        if v.size != b.size:
            raise SchemaError("one value per breakpoint is required", "values")
        if (v < 0).any() or (v > 1).any():
            raise SchemaError("values must lie in [0, 1]", "values")

    @classmethod
    def tent(cls, peak: float = 0.5) -> IntervalMapSystem:
        return cls((0.0, float(peak), 1.0), (0.0, 1.0, 0.0))

    def contains(self, x: object) -> bool:
        return isinstance(x, (int, float)) and 0.0 <= float(x) <= 1.0

    def step(self, x: float) -> float:
        return float(np.interp(x, self.breakpoints, self.values))

    def distance(self, x: float, y: float) -> float:
        return abs(x - y)
