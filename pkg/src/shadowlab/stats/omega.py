"""Upper-density limit sets: estimators and the exact finite-map answer."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Hashable, Sequence

import numpy as np

from shadowlab.config.settings import EstimatorSettings
from shadowlab.errors import BadParameter
from shadowlab.stats.density import upper_lower_density, window_start
from shadowlab.systems import FiniteMapSystem, OrbitSegment, ShiftOrbit, SymbolicPoint

logger = logging.getLogger(__name__)

MIN_HORIZON = 100
DEFAULT_INTERVAL_EPSILON = EstimatorSettings().interval_epsilon
DEFAULT_SYMBOLIC_EPSILON = EstimatorSettings().symbolic_epsilon


@dataclass(frozen=True, eq=False)
class OmegaBarEstimate:
    """Candidates whose ball is visited with upper density above ``theta``."""

    candidates: tuple[Any, ...]
    upper: tuple[float, ...]
    theta: float
    epsilon: float
    horizon: int
    tail_fraction: float

    @property
    def selected(self) -> tuple[int, ...]:
        return tuple(i for i, u in enumerate(self.upper) if u > self.theta)

    @property
    def points(self) -> tuple[Any, ...]:
        return tuple(self.candidates[i] for i in self.selected)


def cylinder_length(epsilon: float) -> int:
    """Symbols two sequences must share to be closer than ``epsilon``."""
    return max(0, math.floor(-math.log2(epsilon)) + 1)


def window_words(samples: Sequence[SymbolicPoint], length: int) -> np.ndarray:
    """Row i holds the first ``length`` symbols of sample i."""
    horizon = len(samples)
    if isinstance(samples, ShiftOrbit):
        width = max(length, 1)
        arr = samples.start.word_array(horizon - 1 + width)
        return np.lib.stride_tricks.sliding_window_view(arr, width)[:horizon, :length]
    return np.array([p.word(length) for p in samples], dtype=np.int64).reshape(horizon, length)


class BallVisits:
    """Visit masks of the balls around candidates along one sample."""

    def __init__(self, samples: Sequence[Any], epsilon: float, system: Any) -> None:
        self.samples = samples
        self.horizon = len(samples)
        self.epsilon = epsilon
        self.system = system
        first = samples[0]
        if isinstance(first, SymbolicPoint):
            self.mode = "cylinder" if epsilon > 0 else "exact"
        elif isinstance(first, (float, np.floating)) and not isinstance(system, FiniteMapSystem):
            self.mode = "interval"
        elif epsilon > 0 and isinstance(system, FiniteMapSystem):
            self.mode = "metric"
        else:
            self.mode = "exact"
        self._words: np.ndarray | None = None

    def words(self) -> np.ndarray:
        if self._words is None:
            self._words = window_words(self.samples, cylinder_length(self.epsilon))
        return self._words

    def default_candidates(self, start: int = 0) -> list[Any]:
        tail = range(start, self.horizon)
        if self.mode == "interval":
            cells = round(1 / self.epsilon)
            return [(k + 0.5) / cells for k in range(cells)]
        if self.mode == "cylinder":
            seen: dict[tuple[int, ...], Any] = {}
            words = self.words()
            for i in tail:
                seen.setdefault(tuple(words[i]), self.samples[i])
            return list(seen.values())
        out: dict[Hashable, None] = {}
        for i in tail:
            out.setdefault(self.samples[i], None)
        return list(out)

    def mask(self, y: Any) -> np.ndarray:
        if self.mode == "cylinder":
            key = np.array(y.word(cylinder_length(self.epsilon)), dtype=np.int64)
            return (self.words() == key).all(axis=1)
        if self.mode == "interval":
            return np.abs(np.asarray(self.samples, dtype=float) - float(y)) < self.epsilon
        if self.mode == "metric":
            table = np.asarray(self.system.metric)
            idx = np.array([self.system.index(p) for p in self.samples])
            return table[idx, self.system.index(y)] < self.epsilon
        return np.fromiter((p == y for p in self.samples), dtype=bool, count=self.horizon)


def _samples_and_system(seq: OrbitSegment | Sequence[Any], system: Any) -> tuple[Sequence, Any]:
    if isinstance(seq, OrbitSegment):
        return seq.samples, system if system is not None else seq.system
    return seq, system


def resolve_epsilon(samples: Sequence[Any], epsilon: float | None, system: Any) -> float:
    if epsilon is not None:
        if epsilon < 0:
            raise BadParameter(f"epsilon must be >= 0, got {epsilon}")
        return float(epsilon)
    first = samples[0]
    if isinstance(first, SymbolicPoint):
        return DEFAULT_SYMBOLIC_EPSILON
    if isinstance(first, (float, np.floating)) and not isinstance(system, FiniteMapSystem):
        return DEFAULT_INTERVAL_EPSILON
    return 0.0


def omega_bar_estimate(
    seq: OrbitSegment | Sequence[Any],
    candidates: Sequence[Any] | None = None,
    epsilon: float | None = None,
    theta: float = 0.01,
    tail_fraction: float = 0.5,
    system: Any = None,
) -> OmegaBarEstimate:
    """Upper density of the visits to B_epsilon(y) for each candidate y.

    Symbolic balls are cylinders: d(x, y) < 2^-r means agreement on the first
    r+1 symbols. Finite labels use equality unless a positive epsilon and the
    system's metric are given; interval samples use |x - y| < epsilon.
    """
    samples, system = _samples_and_system(seq, system)
    horizon = len(samples)
    if horizon < MIN_HORIZON:
        raise BadParameter(f"horizon must be >= {MIN_HORIZON}, got {horizon}")
    eps = resolve_epsilon(samples, epsilon, system)
    visits = BallVisits(samples, eps, system)
    if candidates is None:
        candidates = visits.default_candidates()
    upper = tuple(
        upper_lower_density(visits.mask(y), horizon, tail_fraction).upper for y in candidates
    )
    estimate = OmegaBarEstimate(tuple(candidates), upper, theta, eps, horizon, tail_fraction)
    logger.debug(
        "omega-bar estimate: %d of %d candidates above theta=%g",
        len(estimate.selected),
        len(candidates),
        theta,
    )
    return estimate


def omega_estimate(
    seq: OrbitSegment | Sequence[Any],
    candidates: Sequence[Any] | None = None,
    epsilon: float | None = None,
    theta: float = 0.01,
    tail_fraction: float = 0.5,
    system: Any = None,
    burn_in: int | None = None,
) -> tuple[Any, ...]:
    """Candidates whose ball is visited at some time >= ``burn_in``.

    The default burn-in is floor(theta * s) with s the tail-window start: a
    candidate last visited before it has prefix density <= theta on the whole
    window, so the omega-bar estimate at the same parameters is a subset.
    """
    samples, system = _samples_and_system(seq, system)
    horizon = len(samples)
    eps = resolve_epsilon(samples, epsilon, system)
    visits = BallVisits(samples, eps, system)
    if burn_in is None:
        burn_in = math.floor(theta * window_start(horizon, tail_fraction))
    if candidates is None:
        candidates = visits.default_candidates(burn_in)
    return tuple(y for y in candidates if visits.mask(y)[burn_in:].any())


def _cycle_of(system: FiniteMapSystem, start: Hashable) -> list[int]:
    seen: dict[int, int] = {}
    path: list[int] = []
    v = system.index(start)
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = system.image[v]
    return path[seen[v] :]


def omega_bar_exact_finite(system: FiniteMapSystem, start: Hashable) -> frozenset:
    """The cycle the orbit of ``start`` falls into."""
    return frozenset(system.points[i] for i in _cycle_of(system, start))


@dataclass(frozen=True)
class PowerIdentityCheck:
    holds: bool
    union_holds: bool
    image_holds: bool
    pieces: tuple[frozenset, ...]

    def __bool__(self) -> bool:
        return self.holds


def omega_bar_power_identity_check(
    system: FiniteMapSystem, start: Hashable, m: int
) -> PowerIdentityCheck:
    """Compare omega-bar(x, f) with the union of omega-bar(f^i x, f^m), i < m.

    Also checks f^i(omega-bar(x, f^m)) == omega-bar(f^i x, f^m).
    """
    if m < 1:
        raise BadParameter(f"m must be >= 1, got {m}")
    power = system.power(m)
    whole = omega_bar_exact_finite(system, start)
    pieces = []
    x = start
    base = omega_bar_exact_finite(power, start)
    image_ok = True
    image = set(base)
    for _ in range(m):
        piece = omega_bar_exact_finite(power, x)
        pieces.append(piece)
        image_ok = image_ok and frozenset(image) == piece
        x = system.step(x)
        image = {system.step(p) for p in image}
    union_ok = frozenset().union(*pieces) == whole
    return PowerIdentityCheck(union_ok and image_ok, union_ok, image_ok, tuple(pieces))
