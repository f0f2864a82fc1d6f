"""Pseudo-orbits: sequences whose steps land near the true image."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from shadowlab.errors import BadParameter, DefectExceeded
from shadowlab.shadowing.classes import ClassLabeling, class_labeling
from shadowlab.stats.density import prefix_averages
from shadowlab.systems import SymbolicPoint, SymbolicSystem
from shadowlab.systems.symbolic import DEFAULT_DEPTH

logger = logging.getLogger(__name__)

SeedLike = int | Sequence[int]


def resolution_depth(system: Any, *scales: float | None) -> int:
    """Symbols to compare so that distances down to every scale are read exactly.

    A scale 2^-m needs m + 2 symbols; the system's own depth is the floor.
    """
    depth = getattr(system, "depth", DEFAULT_DEPTH)
    for scale in scales:
        if scale is not None and 0 < scale < 1:
            depth = max(depth, math.ceil(-math.log2(scale)) + 2)
    return depth


def step_defects(system: Any, points: Sequence[Any], depth: int | None = None) -> np.ndarray:
    """d(f(x_i), x_{i+1}) for consecutive points."""
    if len(points) < 2:
        return np.zeros(0)
    if isinstance(system, SymbolicSystem):
        if depth is None:
            depth = system.depth
        words = np.array([p.word(depth + 1) for p in points], dtype=np.int64)
        diff = words[:-1, 1:] != words[1:, :-1]
        differs = diff.any(axis=1)
        defects = np.where(differs, np.exp2(-diff.argmax(axis=1).astype(float)), 0.0)
        # agreement up to depth: exact only when the sequences are equal
        for i in np.flatnonzero(~differs):
            if points[i].shift(1) != points[i + 1]:
                defects[i] = 2.0**-depth
        return defects
    return np.array(
        [system.distance(system.step(points[i]), points[i + 1]) for i in range(len(points) - 1)],
        dtype=float,
    )


@dataclass(frozen=True, eq=False)
class PseudoOrbit:
    """x_0 .. x_L together with the defects measured on it."""

    system: Any
    points: tuple[Any, ...]
    delta: float
    defects: tuple[float, ...]
    class_trace: tuple[int, ...] | None = None

    @classmethod
    def build(
        cls,
        system: Any,
        points: Sequence[Any],
        delta: float | None = None,
        labeling: ClassLabeling | None = None,
        depth: int | None = None,
    ) -> PseudoOrbit:
        """Measure the defects; ``delta=None`` takes the largest one.

        On a symbolic true orbit that leaves delta = 2^-depth rather than 0.
        """
        if not points:
            raise BadParameter("a pseudo-orbit needs at least one point")
        if depth is None:
            depth = resolution_depth(system, delta)
        defects = step_defects(system, points, depth)
        worst = float(defects.max()) if defects.size else 0.0
        if delta is None:
            delta = worst
            if delta == 0 and isinstance(system, SymbolicSystem):
                delta = 2.0**-depth
        tolerance = getattr(system, "tolerance", 0.0)
        if worst > delta + tolerance:
            i = int(defects.argmax())
            raise DefectExceeded(f"defect {worst:g} at step {i} exceeds delta {delta:g}")
        trace = tuple(labeling.of(p) for p in points) if labeling is not None else None
        return cls(system, tuple(points), float(delta), tuple(float(d) for d in defects), trace)

    @property
    def length(self) -> int:
        """Number of steps L."""
        return len(self.points) - 1

    @property
    def max_defect(self) -> float:
        return max(self.defects, default=0.0)

    def __len__(self) -> int:
        return len(self.points)


def delta_exponent(delta: float) -> int | None:
    """m with delta == 2^-m, or None."""
    if not 0 < delta < 1:
        return None
    m = round(-np.log2(delta))
    return int(m) if m >= 1 and 2.0**-m == delta else None


def _extend(
    system: SymbolicSystem, word: list[int], extra: int, rng: np.random.Generator
) -> SymbolicPoint:
    for _ in range(extra):
        succ = system.successors(word[-1])
        word.append(succ[int(rng.integers(len(succ)))])
    return system.complete(word)


def random_pseudo_orbit(
    system: SymbolicSystem,
    start_class: int | None,
    length: int,
    m: int,
    seed: SeedLike,
    labeling: ClassLabeling | None = None,
) -> PseudoOrbit:
    """Seeded 2^-m pseudo-orbit with ``length`` steps.

    x_0 starts in ``start_class`` (any symbol when None). Every x_{i+1} copies
    the first m symbols of sigma(x_i) and continues with random admissible
    symbols, so each defect is at most 2^-m.
    """
    if m < 1:
        raise BadParameter(f"m must be >= 1, got {m}")
    if length < 1:
        raise BadParameter(f"length must be >= 1, got {length}")
    rng = np.random.default_rng(seed)
    if start_class is None:
        firsts = list(range(system.size))
    else:
        if labeling is None:
            labeling = class_labeling(system)
        if not 0 <= start_class < labeling.m:
            raise BadParameter(f"class {start_class} outside 0..{labeling.m - 1}")
        firsts = [system.alphabet.index(s) for s in labeling.symbols_in(start_class)]

    extra = m + 1
    points = [_extend(system, [firsts[int(rng.integers(len(firsts)))]], m + extra, rng)]
    for _ in range(length):
        head = list(points[-1].word(m + 1)[1:])
        points.append(_extend(system, head, extra, rng))
    return PseudoOrbit.build(system, points, 2.0**-m, labeling)


def is_along_D(system: Any, po: PseudoOrbit, labeling: ClassLabeling | None = None) -> bool:
    """Every step advances the cyclic class by exactly one."""
    if labeling is None:
        labeling = class_labeling(system, po.delta)
    classes = [labeling.of(p) for p in po.points]
    return all((b - a) % labeling.m == 1 % labeling.m for a, b in zip(classes, classes[1:]))


def average_defect_curve(points: PseudoOrbit | Sequence[Any], system: Any) -> np.ndarray:
    """(1/n) * sum_{i<n} d(f(x_i), x_{i+1}) for n = 1..L."""
    if isinstance(points, PseudoOrbit):
        defects = np.asarray(points.defects, dtype=float)
    else:
        if len(points) < 2:
            raise BadParameter("need at least two points")
        defects = step_defects(system, points)
    return prefix_averages(defects)
