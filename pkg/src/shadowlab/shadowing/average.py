"""Average shadowing: from a Cesaro-small pseudo-orbit to one true orbit.

The construction runs in two stages. First the sequence is regularized: every
step whose defect misses the tolerance schedule is replaced by a stretch of a
genuine orbit that lands exactly on a later x_{b+L}. Then a single point is
glued together: it copies x_0 long enough to be epsilon-close, walks into the
regularized sequence and afterwards reads off its first symbols.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from shadowlab.chain import uniform_chain_bound
from shadowlab.chain.paths import path_of_length
from shadowlab.config.settings import ShadowingSettings
from shadowlab.errors import BadParameter, ScheduleExhausted
from shadowlab.shadowing.classes import ClassLabeling, class_labeling
from shadowlab.shadowing.pseudo_orbit import step_defects
from shadowlab.stats.density import prefix_averages
from shadowlab.stats.omega import cylinder_length
from shadowlab.systems import SymbolicPoint, SymbolicSystem, shift_distances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToleranceSchedule:
    """Blocks [n_j, n_{j+1}) with n_1 = first_block, n_{j+1} = growth * n_j.

    Block j accepts defects up to 2^-(j + delta_offset); stage j of the gluing
    may move the point by at most epsilon * epsilon_decay^(j + 2).
    """

    first_block: int = 16
    growth: int = 4
    delta_offset: int = 2
    epsilon_decay: float = 0.5

    def __post_init__(self) -> None:
        if self.first_block < 1:
            raise BadParameter(f"first_block must be >= 1, got {self.first_block}")
        if self.growth < 2:
            raise BadParameter(f"block growth must be >= 2, got {self.growth}")
        if self.delta_offset < 1:
            raise BadParameter(f"delta_offset must be >= 1, got {self.delta_offset}")
        if not 0 < self.epsilon_decay < 1:
            raise BadParameter(f"epsilon_decay must lie in (0, 1), got {self.epsilon_decay}")

    @classmethod
    def from_settings(cls, settings: ShadowingSettings) -> ToleranceSchedule:
        return cls(
            first_block=settings.first_block,
            growth=settings.block_growth,
            delta_offset=settings.delta_offset,
            epsilon_decay=settings.epsilon_decay,
        )

    def tolerance(self, j: int) -> float:
        return 2.0 ** -(j + self.delta_offset)

    def eta(self, epsilon: float, j: int) -> float:
        return epsilon * self.epsilon_decay ** (j + 2)

    def boundaries(self, horizon: int) -> list[int]:
        """Block starts below ``horizon``, beginning with 0."""
        out = [0]
        n = self.first_block
        while n < horizon:
            out.append(n)
            n *= self.growth
        return out

    def tolerances(self, horizon: int) -> np.ndarray:
        starts = np.array(self.boundaries(horizon))
        block = np.searchsorted(starts, np.arange(horizon), side="right") - 1
        return np.exp2(-(block + self.delta_offset).astype(float))

    def as_dict(self) -> dict[str, float]:
        return {
            "first_block": self.first_block,
            "growth": self.growth,
            "delta_offset": self.delta_offset,
            "epsilon_decay": self.epsilon_decay,
        }


@dataclass(frozen=True, eq=False)
class Subsequence:
    indices: np.ndarray
    mask: np.ndarray
    prefix_density: np.ndarray
    schedule: ToleranceSchedule

    @property
    def density(self) -> float:
        return float(self.prefix_density[-1]) if self.prefix_density.size else 1.0


def density_one_subsequence(
    values: Sequence[float] | np.ndarray, schedule: ToleranceSchedule | None = None
) -> Subsequence:
    """Indices whose value is within the tolerance of their block."""
    schedule = schedule or ToleranceSchedule()
    v = np.asarray(values, dtype=float)
    if (v < 0).any():
        raise BadParameter("values must be nonnegative")
    mask = v <= schedule.tolerances(v.size)
    return Subsequence(np.flatnonzero(mask), mask, prefix_averages(mask), schedule)


@dataclass(frozen=True)
class StageRecord:
    boundary: int
    eta: float
    stabilized_prefix: int


@dataclass(frozen=True, eq=False)
class AverageShadowTrace:
    point: SymbolicPoint
    cesaro_errors: np.ndarray
    epsilon: float
    schedule: ToleranceSchedule
    horizon: int
    source_length: int
    bad_steps: tuple[int, ...] = ()
    bridges: tuple[tuple[int, int], ...] = ()
    entry: int = 0
    stages: tuple[StageRecord, ...] = field(default=())
    class_preserved: bool = True

    @property
    def final_error(self) -> float:
        return float(self.cesaro_errors[-1])

    @property
    def truncated(self) -> bool:
        """The input continues past the horizon the point was built from."""
        return self.source_length > self.horizon


class _Builder:
    def __init__(self, system: SymbolicSystem, labeling: ClassLabeling, cap: int) -> None:
        self.system = system
        self.graph = labeling.graph
        self.names = system.alphabet.symbols
        self.cap = cap

    def walk(self, a: int, b: int, k: int) -> list[int] | None:
        path = path_of_length(self.graph, self.names[a], self.names[b], k)
        if path is None:
            return None
        return [self.system.alphabet.index(s) for s in path]

    def bridge(
        self, xs: Sequence[SymbolicPoint], b: int, horizon: int
    ) -> tuple[SymbolicPoint, int] | None:
        """A point p with p_0 = (x_b)_0 and sigma^L p = x_{b+L}, for the least L."""
        for length in range(1, self.cap + 1):
            if b + length > horizon - 1:
                return None
            target = xs[b + length]
            walk = self.walk(xs[b].symbol(0), target.symbol(0), length)
            if walk is not None:
                prefix = tuple(walk[:-1]) + target.prefix
                return SymbolicPoint(self.system.alphabet, prefix, target.period), length
        raise ScheduleExhausted(
            f"no orbit bridges step {b} within {self.cap} steps", stage="regularize"
        )


def alternating_block_sequence(
    first: SymbolicPoint,
    second: SymbolicPoint,
    horizon: int,
    ratio: float = 4.0,
    first_block: int = 16,
) -> list[SymbolicPoint]:
    """x_i = sigma^i of ``first`` or ``second``, switching in blocks growing by ``ratio``."""
    points = []
    current, other = first, second
    block, start = first_block, 0
    for i in range(horizon):
        if i - start >= block:
            current, other = other, current
            start, block = i, math.ceil(block * ratio)
        points.append(current.shift(i))
    return points


def average_shadow_trace(
    system: SymbolicSystem,
    points: Sequence[SymbolicPoint],
    epsilon: float = 2.0**-4,
    schedule: ToleranceSchedule | None = None,
    horizon: int | None = None,
    labeling: ClassLabeling | None = None,
    depth: int = 32,
) -> AverageShadowTrace:
    schedule = schedule or ToleranceSchedule()
    horizon = horizon or len(points)
    if horizon < 2 or len(points) < horizon:
        raise BadParameter(f"need at least {max(horizon, 2)} points, got {len(points)}")
    if not 0 < epsilon:
        raise BadParameter(f"epsilon must be positive, got {epsilon}")
    labeling = labeling or class_labeling(system)
    bound = uniform_chain_bound(labeling.graph, labeling.decomposition)
    builder = _Builder(system, labeling, bound.m * (bound.N + 1) + len(labeling.graph))
    xs = list(points[:horizon])

    classes = [labeling.of(p) for p in xs]
    if any((b - a) % labeling.m != 1 % labeling.m for a, b in zip(classes, classes[1:])):
        logger.warning("input does not advance along the cyclic classes; bridges may fail")

    # stage 1: regularize
    sub = density_one_subsequence(step_defects(system, xs), schedule)
    bad = [int(b) for b in np.flatnonzero(~sub.mask)]
    ys = list(xs)
    bridges: list[tuple[int, int]] = []
    covered = 0
    for b in bad:
        if b < covered:
            continue
        found = builder.bridge(xs, b, horizon)
        if found is None:
            for t in range(b + 1, horizon):
                ys[t] = xs[b].shift(t - b)
            bridges.append((b, horizon - 1 - b))
            break
        p, length = found
        for t in range(length):
            ys[b + t] = p.shift(t)
        bridges.append((b, length))
        covered = b + length
    logger.debug("regularized %d bad steps with %d bridges", len(bad), len(bridges))

    # stage 2: glue
    keep = max(1, cylinder_length(epsilon))
    word = list(xs[0].word(keep))
    entry = None
    for n in range(keep, min(horizon - 1, keep + builder.cap)):
        walk = builder.walk(word[-1], ys[n].symbol(0), n - keep + 1)
        if walk is not None:
            word.extend(walk[1:])
            entry = n
            break
    if entry is None:
        if horizon - 1 > keep + builder.cap:
            raise ScheduleExhausted("cannot walk from x_0 into the sequence", stage="entry")
        x = xs[0]
        entry = horizon - 1
        word = list(x.word(horizon - 1))
    else:
        word.extend(ys[i].symbol(0) for i in range(entry + 1, horizon - 1))
        tail = ys[horizon - 1]
        x = SymbolicPoint(system.alphabet, tuple(word[: horizon - 1]) + tail.prefix, tail.period)

    stages = []
    cuts = [n for n in schedule.boundaries(horizon) if entry < n < horizon - 1]
    for k, (n, n_next) in enumerate(zip(cuts, cuts[1:] + [horizon - 1])):
        w = SymbolicPoint(system.alphabet, tuple(word[:n]) + ys[n].prefix, ys[n].period)
        follow = x if n_next == horizon - 1 else SymbolicPoint(
            system.alphabet, tuple(word[:n_next]) + ys[n_next].prefix, ys[n_next].period
        )
        reach = n_next + depth
        agree = w.agreement(follow, reach)
        stabilized = reach if agree is None else agree
        eta = schedule.eta(epsilon, k)
        if 2.0**-stabilized > eta:
            raise ScheduleExhausted(
                f"stage {k} moved the point by 2^-{stabilized} > {eta:g}", stage="stabilize"
            )
        stages.append(StageRecord(n, eta, stabilized))

    errors = shift_distances(x, xs, depth)
    trace = AverageShadowTrace(
        point=x,
        cesaro_errors=prefix_averages(errors),
        epsilon=epsilon,
        schedule=schedule,
        horizon=horizon,
        source_length=len(points),
        bad_steps=tuple(bad),
        bridges=tuple(bridges),
        entry=entry,
        stages=tuple(stages),
        class_preserved=labeling.of(x) == labeling.of(xs[0]),
    )
    logger.info(
        "average shadow trace: final Cesaro error %.3g over %d steps, %d bridges",
        trace.final_error,
        horizon,
        len(bridges),
    )
    return trace
