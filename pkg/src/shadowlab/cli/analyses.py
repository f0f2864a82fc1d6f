"""Analysis system: BaseAnalysis, AnalysisRegistry and the built-in analyses."""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from shadowlab.chain import (
    chain_components,
    cyclic_decomposition,
    is_chain_mixing,
    is_chain_transitive,
    uniform_chain_bound,
)
from shadowlab.cli.specs import parse_point, render_point
from shadowlab.config import ExperimentParams, Settings
from shadowlab.errors import BadParameter, NoDisjointCycles, SchemaError
from shadowlab.shadowing import (
    ToleranceSchedule,
    alternating_block_sequence,
    average_shadow_trace,
    class_labeling,
    dsp_check,
    random_pseudo_orbit,
    sft_shadow,
    transition_graph,
)
from shadowlab.stats import (
    birkhoff_irregularity,
    dc2_verdict,
    distributional_functions,
    invariant_supports_finite,
    irregular_point_near,
    irregular_witness_sft,
    measure_center_finite,
    omega_bar_estimate,
    omega_bar_exact_finite,
    omega_estimate,
    recurrent_points_finite,
    scrambled_family_check,
)
from shadowlab.stats.omega import cylinder_length
from shadowlab.systems import (
    FiniteMapSystem,
    IntervalMapSystem,
    SymbolicPoint,
    SymbolicSystem,
    System,
    orbit,
    spectral_radius,
    topological_entropy,
)
from shadowlab.systems.finite import vertex_key

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 4096
DC2_GRID = tuple(2.0**-k for k in range(0, 9))


def _sorted(items: Any) -> list:
    return sorted(items, key=vertex_key)


def _ball_label(point: Any, epsilon: float) -> Any:
    """Symbolic candidates are named by the cylinder word their ball fixes."""
    if isinstance(point, SymbolicPoint) and epsilon > 0:
        return point.alphabet.render(point.word(cylinder_length(epsilon)))
    return render_point(point)


def _require(system: System, kind: type, command: str) -> None:
    if not isinstance(system, kind):
        raise BadParameter(f"{command} needs a {kind.kind} system, got {system.kind}")


class BaseAnalysis(ABC):
    """One CLI command: reads the parameters it needs, returns a JSON-able payload."""

    name: str = ""
    description: str = ""
    randomized: bool = False

    @abstractmethod
    def execute(
        self, system: System, params: ExperimentParams, settings: Settings
    ) -> dict[str, Any]: ...

    def horizon(self, params: ExperimentParams) -> int:
        return params.horizon or DEFAULT_HORIZON

    def theta(self, params: ExperimentParams, settings: Settings) -> float:
        return params.theta if params.theta is not None else settings.estimators.theta

    def tail(self, params: ExperimentParams, settings: Settings) -> float:
        return params.tail if params.tail is not None else settings.estimators.tail_fraction

    def epsilon(self, system: System, params: ExperimentParams, settings: Settings) -> float:
        """Ball radius: the --epsilon flag, else the configured default for the system kind."""
        if params.epsilon is not None:
            return params.epsilon
        if isinstance(system, SymbolicSystem):
            return settings.estimators.symbolic_epsilon
        if isinstance(system, IntervalMapSystem):
            return settings.estimators.interval_epsilon
        return 0.0

    def start(self, system: System, params: ExperimentParams, key: str = "start") -> Any:
        value = getattr(params, key)
        if value is not None:
            return parse_point(system, value)
        if isinstance(system, SymbolicSystem):
            return system.complete([0])
        if isinstance(system, FiniteMapSystem):
            return system.points[0]
        raise SchemaError(f"an interval map needs --{key}", key)


class AnalysisRegistry:
    """Registry that stores analyses by command name."""

    def __init__(self) -> None:
        self._analyses: dict[str, BaseAnalysis] = {}

    def register(self, analysis: BaseAnalysis) -> None:
        self._analyses[analysis.name] = analysis

    def get(self, name: str) -> BaseAnalysis | None:
        return self._analyses.get(name)

    def get_required(self, name: str) -> BaseAnalysis:
        analysis = self.get(name)
        if analysis is None:
            raise SchemaError(f"unknown command {name!r}", "command")
        return analysis

    def all_analyses(self) -> list[BaseAnalysis]:
        return list(self._analyses.values())

    def names(self) -> list[str]:
        return list(self._analyses)


# ---------------------------------------------------------------------------
# chain structure
# ---------------------------------------------------------------------------


class DecomposeAnalysis(BaseAnalysis):
    name = "decompose"
    description = "Chain components, period, cyclic classes and the uniform chain bound"

    def execute(self, system, params, settings):
        if isinstance(system, IntervalMapSystem):
            raise BadParameter("decompose needs a finite presentation")
        delta = 2.0**-params.m
        graph = transition_graph(system, delta)
        components = []
        for comp in chain_components(graph).components:
            dec = cyclic_decomposition(comp, graph)
            components.append(
                {
                    "vertices": _sorted(comp),
                    "m": dec.m,
                    "classes": [_sorted(c) for c in dec.classes],
                }
            )
        components.sort(key=lambda c: vertex_key(c["vertices"][0]))
        out: dict[str, Any] = {
            "chain_transitive": is_chain_transitive(graph),
            "components": components,
            "delta": delta,
        }
        if out["chain_transitive"]:
            labeling = class_labeling(system, delta)
            bound = uniform_chain_bound(labeling.graph, labeling.decomposition)
            out.update(
                m=labeling.m,
                classes=[_sorted(c) for c in labeling.decomposition.classes],
                N=bound.N,
                certificate=bound.certificate,
                mixing=is_chain_mixing(graph),
            )
        return out


# ---------------------------------------------------------------------------
# shadowing
# ---------------------------------------------------------------------------


class DSPCheckAnalysis(BaseAnalysis):
    name = "dsp-check"
    description = "Shadow seeded pseudo-orbits from every cyclic class"
    randomized = True

    def execute(self, system, params, settings):
        _require(system, SymbolicSystem, self.name)
        report = dsp_check(
            system,
            params.m,
            params.trials,
            params.length,
            params.seed,
            max_concurrent=settings.runtime.max_concurrent,
        )
        return {
            "m_delta": report.m_delta,
            "bound": report.bound,
            "length": report.length,
            "passed": report.passed,
            "uniform": report.uniform,
            "classes": [
                {
                    "class": c.residue,
                    "trials": c.trials,
                    "worst_epsilon": c.worst_epsilon,
                    "all_same_class": c.all_same_class,
                    "passed": c.passed,
                }
                for c in report.classes
            ],
        }


class ShadowAnalysis(BaseAnalysis):
    name = "shadow"
    description = "Shadow a single seeded pseudo-orbit"
    randomized = True

    def execute(self, system, params, settings):
        _require(system, SymbolicSystem, self.name)
        po = random_pseudo_orbit(system, None, params.length, params.m, params.seed)
        result = sft_shadow(system, po)
        return {
            "delta": po.delta,
            "length": po.length,
            "max_defect": po.max_defect,
            "start": render_point(po.points[0]),
            "shadow_point": render_point(result.shadow_point),
            "epsilon_achieved": result.epsilon_achieved,
            "bound": 2.0 ** (-params.m + 1),
            "same_class": result.same_class,
        }


def _periodic_pair(system: SymbolicSystem, rng: np.random.Generator) -> tuple[Any, Any]:
    """Two distinct periodic points starting in class 0, period a multiple of m."""
    labeling = class_labeling(system)
    m = labeling.m
    for p in range(m, m * system.size + 1, m):
        pts = [x for x in system.periodic_points(p) if labeling.of(x) == 0]
        if len(pts) >= 2:
            i, j = rng.choice(len(pts), size=2, replace=False)
            return pts[int(i)], pts[int(j)]
    raise NoDisjointCycles("class 0 holds a single periodic orbit")


class AverageShadowAnalysis(BaseAnalysis):
    name = "avg-shadow"
    description = "Trace one true orbit through an alternating block sequence"
    randomized = True

    def execute(self, system, params, settings):
        _require(system, SymbolicSystem, self.name)
        rng = np.random.default_rng(params.seed)
        if params.start is not None and params.other is not None:
            first, second = parse_point(system, params.start), parse_point(system, params.other)
        else:
            first, second = _periodic_pair(system, rng)
        horizon = params.horizon or 2**14
        ratio = params.ratio or settings.estimators.block_ratio
        schedule = ToleranceSchedule.from_settings(settings.shadowing)
        points = alternating_block_sequence(first, second, horizon, ratio, schedule.first_block)
        epsilon = self.epsilon(system, params, settings)
        trace = average_shadow_trace(system, points, epsilon, schedule)

        theta, tail = self.theta(params, settings), self.tail(params, settings)
        own = omega_bar_estimate(
            orbit(system, trace.point, horizon), epsilon=epsilon, theta=theta, tail_fraction=tail
        )
        given = omega_bar_estimate(
            points, epsilon=epsilon, theta=theta, tail_fraction=tail, system=system
        )
        checkpoints = [2**k for k in range(int(math.log2(horizon)) + 1)]
        return {
            "first": render_point(first),
            "second": render_point(second),
            "horizon": horizon,
            "ratio": ratio,
            "schedule": schedule.as_dict(),
            "epsilon": epsilon,
            "final_error": trace.final_error,
            "cesaro_errors": {str(n): float(trace.cesaro_errors[n - 1]) for n in checkpoints},
            "class_preserved": trace.class_preserved,
            "bad_steps": len(trace.bad_steps),
            "bridges": len(trace.bridges),
            "entry": trace.entry,
            "stages": [
                {"boundary": s.boundary, "eta": s.eta, "stabilized_prefix": s.stabilized_prefix}
                for s in trace.stages
            ],
            "omega_bar_point": sorted(_ball_label(p, own.epsilon) for p in own.points),
            "omega_bar_sequence": sorted(_ball_label(p, given.epsilon) for p in given.points),
        }


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


class OmegaBarAnalysis(BaseAnalysis):
    name = "omega-bar"
    description = "Upper-density limit set of one orbit"

    def execute(self, system, params, settings):
        start = self.start(system, params)
        horizon = self.horizon(params)
        seg = orbit(system, start, horizon)
        theta, tail = self.theta(params, settings), self.tail(params, settings)
        est = omega_bar_estimate(
            seg, epsilon=self.epsilon(system, params, settings), theta=theta, tail_fraction=tail
        )
        omega = omega_estimate(seg, epsilon=est.epsilon, theta=theta, tail_fraction=tail)
        out: dict[str, Any] = {
            "start": render_point(start),
            "horizon": horizon,
            "theta": theta,
            "tail": tail,
            "epsilon": est.epsilon,
            "omega_bar": [
                {
                    "point": _ball_label(est.candidates[i], est.epsilon),
                    "upper_density": est.upper[i],
                }
                for i in est.selected
            ],
            "omega": [_ball_label(p, est.epsilon) for p in omega],
        }
        if isinstance(system, FiniteMapSystem):
            out["exact"] = _sorted(omega_bar_exact_finite(system, start))
        return out


class DC2ScanAnalysis(BaseAnalysis):
    name = "dc2-scan"
    description = "Distributional functions of a pair of orbits on a dyadic grid"

    def execute(self, system, params, settings):
        x = self.start(system, params)
        y = self.start(system, params, "other")
        horizon = self.horizon(params)
        tail = self.tail(params, settings)
        df = distributional_functions(
            orbit(system, x, horizon), orbit(system, y, horizon), DC2_GRID, tail, system
        )
        return {
            "first": render_point(x),
            "second": render_point(y),
            "horizon": horizon,
            "tail": tail,
            "grid": list(df.t_grid),
            "F": df.F.tolist(),
            "F_star": df.F_star.tolist(),
            "dc2": {str(t): dc2_verdict(df, t) for t in df.t_grid},
        }


class IrregularScanAnalysis(BaseAnalysis):
    name = "irregular-scan"
    description = "Birkhoff irregularity: SFT block witness or a random interval orbit"
    randomized = True

    def execute(self, system, params, settings):
        ratio = params.ratio or settings.estimators.block_ratio
        if isinstance(system, SymbolicSystem):
            w = irregular_witness_sft(
                system,
                block_ratio=ratio,
                horizon=params.horizon or 2**16,
                seed=params.seed,
                tail_fraction=params.tail,
            )
            report = w.report
            head = {
                "point": w.point.label(),
                "low_cycle": system.alphabet.render(w.low_cycle),
                "high_cycle": system.alphabet.render(w.high_cycle),
                "ratio": ratio,
            }
            if params.start is not None:
                near = irregular_point_near(
                    system,
                    w.point,
                    parse_point(system, params.start),
                    params.m,
                    horizon=report.horizon,
                    tail_fraction=report.tail_fraction,
                )
                head["near"] = {
                    "start": params.start,
                    "closeness": params.m,
                    "distance": near.distance,
                    "same_class": near.same_class,
                    "oscillation": near.report.oscillation,
                    "irregular": near.report.irregular,
                }
        elif isinstance(system, IntervalMapSystem):
            rng = np.random.default_rng(params.seed)
            start = float(rng.random())
            if params.start is not None:
                start = parse_point(system, params.start)
            seg = orbit(system, start, self.horizon(params))
            report = birkhoff_irregularity(
                seg, np.asarray(seg.samples), tail_fraction=self.tail(params, settings)
            )
            head = {"start": start}
        else:
            raise BadParameter("every orbit of a finite map is eventually periodic")
        return {
            **head,
            "horizon": report.horizon,
            "tail": report.tail_fraction,
            "upper": report.upper,
            "lower": report.lower,
            "oscillation": report.oscillation,
            "irregular": report.irregular,
        }


class ScrambledCheckAnalysis(BaseAnalysis):
    name = "scrambled-check"
    description = "omega-bar scrambling conditions on a finite family"

    def execute(self, system, params, settings):
        if not params.points or len(params.points) < 2:
            raise SchemaError("give at least two points", "points")
        points = [parse_point(system, p) for p in params.points]
        horizon = self.horizon(params)
        witness = scrambled_family_check(
            system,
            points,
            horizon,
            theta=self.theta(params, settings),
            epsilon=self.epsilon(system, params, settings),
            periodicity_bound=settings.estimators.periodicity_bound,
            tail_fraction=self.tail(params, settings),
            max_concurrent=settings.runtime.max_concurrent,
        )
        return {
            "points": [render_point(p) for p in points],
            "horizon": horizon,
            "epsilon": witness.epsilon,
            "omega_bar": [
                [_ball_label(p, e.epsilon) for p in e.points] for e in witness.estimates
            ],
            "pairs": [
                {
                    "first": p.first,
                    "second": p.second,
                    "difference_nonempty": p.difference_nonempty,
                    "intersection_nonempty": p.intersection_nonempty,
                    "nonperiodic_found": p.nonperiodic_found,
                }
                for p in witness.pairs
            ],
            "verdict": witness.verdict,
        }


class MeasureCenterAnalysis(BaseAnalysis):
    name = "measure-center"
    description = "Measure center of a finite map, cross-checked three ways"

    def execute(self, system, params, settings):
        _require(system, FiniteMapSystem, self.name)
        center = measure_center_finite(system)
        return {
            "center": _sorted(center),
            "recurrent": _sorted(recurrent_points_finite(system)),
            "supports": _sorted(invariant_supports_finite(system)),
            "cycles": [list(c) for c in system.cycles()],
        }


class EntropyAnalysis(BaseAnalysis):
    name = "entropy"
    description = "Topological entropy of an SFT"

    def execute(self, system, params, settings):
        _require(system, SymbolicSystem, self.name)
        return {
            "entropy": topological_entropy(system),
            "spectral_radius": spectral_radius(system.matrix),
            "states": system.size,
        }


def default_registry() -> AnalysisRegistry:
    registry = AnalysisRegistry()
    for analysis in (
        DecomposeAnalysis(),
        DSPCheckAnalysis(),
        ShadowAnalysis(),
        AverageShadowAnalysis(),
        OmegaBarAnalysis(),
        DC2ScanAnalysis(),
        IrregularScanAnalysis(),
        ScrambledCheckAnalysis(),
        MeasureCenterAnalysis(),
        EntropyAnalysis(),
    ):
        registry.register(analysis)
    return registry
