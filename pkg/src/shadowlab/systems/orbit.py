"""Finite orbit samples and the protocol every system satisfies."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Protocol, Union, overload

from shadowlab.errors import BadParameter, SchemaError
from shadowlab.systems.finite import FiniteMapSystem
from shadowlab.systems.interval import IntervalMapSystem
from shadowlab.systems.points import SymbolicPoint
from shadowlab.systems.symbolic import SymbolicSystem

System = Union[SymbolicSystem, FiniteMapSystem, IntervalMapSystem]


class DynamicalSystem(Protocol):
    kind: str

    def step(self, point: Any) -> Any: ...

    def distance(self, x: Any, y: Any) -> float: ...

    def contains(self, point: Any) -> bool: ...


class ShiftOrbit(Sequence):
    """Lazy view of (sigma^i x)_{i < horizon}; items are built on access."""

    def __init__(self, start: SymbolicPoint, horizon: int) -> None:
        self.start = start
        self.horizon = horizon

    def __len__(self) -> int:
        return self.horizon

    @overload
    def __getitem__(self, i: int) -> SymbolicPoint: ...

    @overload
    def __getitem__(self, i: slice) -> list[SymbolicPoint]: ...

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(self.horizon))]
        if i < 0:
            i += self.horizon
        if not 0 <= i < self.horizon:
            raise IndexError(i)
        return self.start.shift(i)

    def __iter__(self):
        x = self.start
        for _ in range(self.horizon):
            yield x
            x = x.shift(1)


@dataclass(frozen=True)
class OrbitSegment:
    """x_0 .. x_{H-1} with x_{i+1} = f(x_i)."""

    system: Any
    start: Any
    horizon: int
    samples: Sequence[Any]
    tolerance: float = 0.0

    def __len__(self) -> int:
        return self.horizon


def orbit(system: DynamicalSystem, start: Any, horizon: int) -> OrbitSegment:
    if horizon < 1:
        raise BadParameter(f"horizon must be >= 1, got {horizon}")
    if not system.contains(start):
        raise SchemaError(f"start point {start!r} does not belong to the system", "start")
    if isinstance(system, SymbolicSystem):
        return OrbitSegment(system, start, horizon, ShiftOrbit(start, horizon))
    if isinstance(system, FiniteMapSystem):
        idx = system.index(start)
        samples = []
        for _ in range(horizon):
            samples.append(system.points[idx])
            idx = system.image[idx]
        return OrbitSegment(system, start, horizon, tuple(samples))
    samples_f = [float(start)]
    for _ in range(horizon - 1):
        samples_f.append(system.step(samples_f[-1]))
    return OrbitSegment(system, start, horizon, tuple(samples_f), tolerance=system.tolerance)
