"""Shadowing on subshifts of finite type and its class-constrained check."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from shadowlab.core.trials import run_trials
from shadowlab.errors import BadDelta, SchemaError
from shadowlab.shadowing.classes import ClassLabeling, class_labeling, same_class
from shadowlab.shadowing.pseudo_orbit import (
    PseudoOrbit,
    SeedLike,
    delta_exponent,
    random_pseudo_orbit,
    resolution_depth,
)
from shadowlab.systems import SymbolicPoint, SymbolicSystem, shift_distances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShadowResult:
    shadow_point: Any
    epsilon_achieved: float
    horizon: int
    same_class: bool


@dataclass(frozen=True)
class ShadowVerification:
    passed: bool
    max_error: float
    errors: tuple[float, ...]

    @property
    def worst_index(self) -> int:
        return int(np.argmax(self.errors)) if self.errors else 0


def tracking_errors(system: Any, candidate: Any, points: Any, depth: int) -> np.ndarray:
    """d(f^i(candidate), x_i) for i = 0..len(points)-1."""
    if isinstance(system, SymbolicSystem):
        return shift_distances(candidate, list(points), depth)
    errors = []
    y = candidate
    for x in points:
        errors.append(system.distance(y, x))
        y = system.step(y)
    return np.asarray(errors, dtype=float)


def verify_shadowing(
    system: Any, po: PseudoOrbit, candidate: Any, epsilon: float, depth: int | None = None
) -> ShadowVerification:
    if not system.contains(candidate):
        raise SchemaError(f"candidate {candidate!r} does not belong to the system", "candidate")
    if depth is None:
        depth = resolution_depth(system, po.delta, epsilon)
    errors = tracking_errors(system, candidate, po.points, depth)
    worst = float(errors.max()) if errors.size else 0.0
    return ShadowVerification(worst <= epsilon, worst, tuple(float(e) for e in errors))


def sft_shadow(
    system: SymbolicSystem, po: PseudoOrbit, depth: int | None = None
) -> ShadowResult:
    """Diagonal readout y_i = (x_i)_0, then the exact orbit of x_L.

    For a 2^-m pseudo-orbit the readout stays within 2^-(m+1) of every x_i.
    """
    m = delta_exponent(po.delta)
    if m is None:
        raise BadDelta(f"delta must be 2^-m with m >= 1, got {po.delta!r}")
    last: SymbolicPoint = po.points[-1]
    readout = tuple(p.symbol(0) for p in po.points[:-1])
    y = SymbolicPoint(system.alphabet, readout + last.prefix, last.period)
    if depth is None:
        depth = resolution_depth(system, po.delta)
    check = verify_shadowing(system, po, y, 2.0 ** (-m + 1), depth)
    if not check.passed:
        logger.warning(
            "readout misses the 2^(1-m) bound: error %g at step %d",
            check.max_error,
            check.worst_index,
        )
    return ShadowResult(y, check.max_error, po.length, same_class(system, y, po.points[0]))


@dataclass(frozen=True)
class ClassVerdict:
    residue: int
    trials: int
    worst_epsilon: float
    all_same_class: bool
    passed: bool


@dataclass(frozen=True)
class DSPReport:
    """Per-class outcome of shadowing seeded pseudo-orbits."""

    m_delta: int
    bound: float
    length: int
    classes: tuple[ClassVerdict, ...]

    @property
    def uniform(self) -> bool:
        """Pass/fail is the same for every class."""
        return len({c.passed for c in self.classes}) <= 1

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.classes)


def dsp_check(
    system: SymbolicSystem,
    m_delta: int,
    trials: int,
    length: int,
    seed: SeedLike,
    max_concurrent: int = 1,
    labeling: ClassLabeling | None = None,
) -> DSPReport:
    """Shadow ``trials`` pseudo-orbits from every class and compare classes.

    Trial t of class c is seeded by (seed, c, t), so the report does not depend
    on how trials are scheduled.
    """
    if labeling is None:
        labeling = class_labeling(system)
    base = [int(s) for s in np.atleast_1d(seed)]
    bound = 2.0 ** (-m_delta + 1)

    def trial(index: int) -> tuple[float, bool]:
        c, t = divmod(index, trials)
        po = random_pseudo_orbit(system, c, length, m_delta, base + [c, t], labeling)
        result = sft_shadow(system, po)
        return result.epsilon_achieved, labeling.of(result.shadow_point) == po.class_trace[0]

    outcomes = run_trials(trial, labeling.m * trials, max_concurrent)
    verdicts = []
    for c in range(labeling.m):
        chunk = outcomes[c * trials : (c + 1) * trials]
        worst = max((e for e, _ in chunk), default=0.0)
        in_class = all(ok for _, ok in chunk)
        verdicts.append(ClassVerdict(c, trials, worst, in_class, in_class and worst <= bound))
    report = DSPReport(m_delta, bound, length, tuple(verdicts))
    logger.info(
        "dsp check: m=%d, %d classes, %d trials each, passed=%s",
        m_delta,
        labeling.m,
        trials,
        report.passed,
    )
    return report
