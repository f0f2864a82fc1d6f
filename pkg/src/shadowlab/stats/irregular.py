"""Birkhoff irregularity: estimator, SFT witnesses and the tent-map experiment."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import networkx as nx
import numpy as np

from shadowlab.chain import (
    TransitionGraph,
    decompose,
    path_of_length,
    symbolic_transition_graph,
)
from shadowlab.errors import BadParameter, NoDisjointCycles, SchemaError
from shadowlab.stats.density import prefix_averages, tail_extremes
from shadowlab.stats.omega import OmegaBarEstimate, omega_bar_estimate
from shadowlab.systems import (
    IntervalMapSystem,
    OrbitSegment,
    SymbolicPoint,
    SymbolicSystem,
    orbit,
    topological_entropy,
)

logger = logging.getLogger(__name__)

MIN_HORIZON = 100
ENTROPY_FLOOR = 1e-12

Observable = Callable[[Any], float] | Sequence[float] | np.ndarray


@dataclass(frozen=True, eq=False)
class IrregularityReport:
    averages: np.ndarray
    upper: float
    lower: float
    epsilon: float
    tail_fraction: float

    @property
    def horizon(self) -> int:
        return int(self.averages.size)

    @property
    def oscillation(self) -> float:
        return self.upper - self.lower

    @property
    def irregular(self) -> bool:
        return self.oscillation > self.epsilon


def birkhoff_irregularity(
    orbit_: OrbitSegment | Sequence[Any] | None,
    observable: Observable,
    epsilon: float = 0.25,
    tail_fraction: float = 0.5,
) -> IrregularityReport:
    """Prefix Birkhoff averages and their spread over the tail window.

    ``observable`` is either a function of a point or the precomputed values
    phi(x_i), in which case ``orbit_`` may be None.
    """
    if callable(observable):
        if orbit_ is None:
            raise BadParameter("a callable observable needs an orbit")
        samples = orbit_.samples if isinstance(orbit_, OrbitSegment) else orbit_
        values = np.array([observable(x) for x in samples], dtype=float)
    else:
        values = np.asarray(observable, dtype=float)
        if orbit_ is not None and len(orbit_) != values.size:
            raise BadParameter("one observable value per orbit point is required")
    if values.size < MIN_HORIZON:
        raise BadParameter(f"horizon must be >= {MIN_HORIZON}, got {values.size}")
    averages = prefix_averages(values)
    upper, lower = tail_extremes(averages, tail_fraction)
    return IrregularityReport(averages, upper, lower, epsilon, tail_fraction)


def first_symbol_observable(system: SymbolicSystem) -> np.ndarray:
    """phi(x) = index of the first base symbol of x_0, scaled into [0, 1]."""
    base = system.base_alphabet
    firsts = np.array([base.index(block[0]) for block in system.blocks], dtype=float)
    return firsts / max(len(base) - 1, 1)


def _canonical(cycle: Sequence[int]) -> tuple[int, ...]:
    rotations = [tuple(cycle[i:]) + tuple(cycle[:i]) for i in range(len(cycle))]
    return min(rotations)


@dataclass(frozen=True, eq=False)
class IrregularWitness:
    point: SymbolicPoint
    report: IrregularityReport
    low_cycle: tuple[int, ...]
    high_cycle: tuple[int, ...]
    boundaries: tuple[int, ...] = field(default=())
    residue: int | None = None
    shadow_error: float = 0.0


def shortest_cycles(system: SymbolicSystem) -> list[tuple[int, ...]]:
    """One shortest cycle through every state, rotated to its least form.

    A BFS from each state v, closed by the predecessor of v nearest to it;
    ties go to the lower state index.
    """
    graph = symbolic_transition_graph(system)
    index = {s: i for i, s in enumerate(system.alphabet.symbols)}
    cycles: set[tuple[int, ...]] = set()
    for v in graph.vertices:
        paths = nx.single_source_shortest_path(graph.nx, v)
        closing = [u for u in graph.predecessors[v] if u in paths]
        if not closing:
            continue
        u = min(closing, key=lambda w: (len(paths[w]), index[w]))
        cycles.add(_canonical([index[w] for w in paths[u]]))
    return sorted(cycles)


def _separating_cycles(
    system: SymbolicSystem, phi: np.ndarray, rng: np.random.Generator
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    cycles = shortest_cycles(system)
    if len(cycles) < 2:
        raise NoDisjointCycles(f"found {len(cycles)} periodic orbit(s); need two")
    means = [float(phi[list(c)].mean()) for c in cycles]
    best = max(abs(a - b) for i, a in enumerate(means) for b in means[i + 1 :])
    if best <= 0:
        raise NoDisjointCycles("no two periodic orbits separate the observable")
    tied = [
        (i, j)
        for i in range(len(cycles))
        for j in range(i + 1, len(cycles))
        if abs(means[i] - means[j]) == best
    ]
    i, j = tied[int(rng.integers(len(tied)))]
    if means[i] > means[j]:
        i, j = j, i
    return cycles[i], cycles[j]


def _bridge(graph: TransitionGraph, source: str, targets: list[str]) -> list[str]:
    """Shortest walk from source into any of targets (at least one edge)."""
    for k in range(1, len(graph) + 1):
        for t in targets:
            path = path_of_length(graph, source, t, k)
            if path is not None:
                return path
    raise NoDisjointCycles(f"no walk from {source!r} reaches the next periodic orbit")


def _stage_points(stages: list[tuple[int, SymbolicPoint]], horizon: int) -> list[SymbolicPoint]:
    """x_i = s_k shifted by i - t_k for t_k <= i < t_{k+1}."""
    points: list[SymbolicPoint] = []
    k = 0
    x = stages[0][1]
    for i in range(horizon):
        if k < len(stages) and stages[k][0] == i:
            x = stages[k][1]
            k += 1
        else:
            x = x.shift(1)
        points.append(x)
    return points


def _shadow_stages(
    system: SymbolicSystem, stages: list[tuple[int, SymbolicPoint]], horizon: int
) -> Any:
    # every stage point starts with the symbol the previous stage reaches: a 1/2-pseudo-orbit
    from shadowlab.shadowing import PseudoOrbit, sft_shadow

    po = PseudoOrbit.build(system, _stage_points(stages, horizon), delta=0.5)
    return sft_shadow(system, po)


def _indices(system: SymbolicSystem, names: Sequence[str]) -> list[int]:
    return [system.alphabet.index(s) for s in names]


def irregular_witness_sft(
    system: SymbolicSystem,
    residue: int | None = None,
    block_ratio: float = 4.0,
    horizon: int = 2**16,
    seed: int | Sequence[int] = 0,
    epsilon: float = 0.25,
    first_block: int = 16,
    tail_fraction: float | None = None,
) -> IrregularWitness:
    """A point that dwells alternately on two periodic orbits in growing blocks.

    The orbits are chosen to maximize the gap between their averages of the
    first-symbol observable; the blocks grow by ``block_ratio``. Stage k is the
    true orbit that bridges into the k-th orbit and stays there; the stages
    form a 1/2-pseudo-orbit whose diagonal shadow is the witness. Unless given,
    the tail window is widened to cover the last three block boundaries.
    """
    if block_ratio < 2:
        raise BadParameter(f"block_ratio must be >= 2, got {block_ratio}")
    graph = symbolic_transition_graph(system)
    dec = decompose(graph)
    if topological_entropy(system) <= ENTROPY_FLOOR:
        raise NoDisjointCycles("zero entropy: the system is a single periodic orbit")
    rng = np.random.default_rng(seed)
    phi = first_symbol_observable(system)
    low, high = _separating_cycles(system, phi, rng)
    names = system.alphabet.symbols

    if residue is None:
        start = 0
    else:
        if not 0 <= residue < dec.m:
            raise BadParameter(f"class {residue} outside 0..{dec.m - 1}")
        start = min(system.alphabet.index(s) for s in dec.classes[residue])

    word = [start]
    stages: list[tuple[int, SymbolicPoint]] = []
    boundaries: list[int] = []
    block = first_block
    target = low
    while len(word) < horizon:
        walk = _bridge(graph, names[word[-1]], [names[c] for c in sorted(target)])
        bridge = _indices(system, walk)
        j = target.index(bridge[-1])
        rotation = target[j:] + target[:j]
        stages.append((len(word) - 1, SymbolicPoint(system.alphabet, tuple(bridge[:-1]), rotation)))
        word.extend(bridge[1:])
        word.extend(rotation[(t + 1) % len(rotation)] for t in range(block - 1))
        boundaries.append(len(word))
        block = math.ceil(block * block_ratio)
        target = high if target == low else low

    shadow = _shadow_stages(system, stages, horizon)
    point = shadow.shadow_point
    inside = [b for b in boundaries if b <= horizon]
    if tail_fraction is None:
        tail_fraction = 1.0 - inside[-3] / horizon if len(inside) >= 3 else 1.0
    values = phi[point.word_array(horizon)]
    report = birkhoff_irregularity(None, values, epsilon, tail_fraction)
    logger.info(
        "irregular witness: oscillation %.4f over %d blocks (ratio %g)",
        report.oscillation,
        len(boundaries),
        block_ratio,
    )
    return IrregularWitness(
        point, report, low, high, tuple(boundaries), residue, shadow.epsilon_achieved
    )


@dataclass(frozen=True, eq=False)
class NearIrregularPoint:
    point: SymbolicPoint
    report: IrregularityReport
    distance: float
    same_class: bool
    bridge: tuple[int, ...]


def irregular_point_near(
    system: SymbolicSystem,
    irregular: SymbolicPoint,
    target: SymbolicPoint,
    closeness: int,
    horizon: int = 2**16,
    epsilon: float = 0.25,
    tail_fraction: float = 0.5,
) -> NearIrregularPoint:
    """An irregular point within 2^-closeness of ``target`` and in its class.

    The pseudo-orbit follows ``target`` for ``closeness`` steps, then takes the
    shortest bridge onto the orbit of ``irregular`` and stays on it. Its shadow
    shares the first closeness + 1 symbols of ``target``; after the bridge its
    Birkhoff averages are those of ``irregular`` up to a shift.
    """
    from shadowlab.shadowing import same_class

    if closeness < 0:
        raise BadParameter(f"closeness must be >= 0, got {closeness}")
    for p, name in ((irregular, "irregular"), (target, "target")):
        if not system.contains(p):
            raise SchemaError(f"point {p.label()} does not belong to the system", name)
    graph = symbolic_transition_graph(system)
    names = system.alphabet.symbols
    head = target.shift(closeness).symbol(0)
    bridge = _indices(system, _bridge(graph, names[head], [names[irregular.symbol(0)]]))
    entry = SymbolicPoint(
        system.alphabet, tuple(bridge[:-1]) + irregular.prefix, irregular.period
    )
    stages = [(0, target), (closeness, entry)] if closeness else [(0, entry)]
    z = _shadow_stages(system, stages, horizon).shadow_point
    phi = first_symbol_observable(system)
    report = birkhoff_irregularity(None, phi[z.word_array(horizon)], epsilon, tail_fraction)
    near = NearIrregularPoint(
        z, report, system.distance(target, z), same_class(system, z, target), tuple(bridge)
    )
    logger.info(
        "irregular point at distance %g from %s: oscillation %.4f",
        near.distance,
        target.label(),
        report.oscillation,
    )
    return near


@dataclass(frozen=True, eq=False)
class TentMapExperiment:
    system: IntervalMapSystem
    start: float
    omega_bar: OmegaBarEstimate
    irregularity: IrregularityReport
    collapsed: bool


def tent_map_experiment(
    horizon: int = 2**14,
    seed: int | Sequence[int] = 0,
    peak: float = 0.5,
    epsilon: float = 1 / 64,
    theta: float = 0.01,
    tail_fraction: float = 0.5,
) -> TentMapExperiment:
    """omega-bar grid estimate and Birkhoff spread of phi(x) = x for one random start.

    With peak 1/2 every binary64 orbit reaches the fixed point 0 within a few
    dozen steps; ``collapsed`` reports that.
    """
    system = IntervalMapSystem.tent(peak)
    start = float(np.random.default_rng(seed).random())
    seg = orbit(system, start, horizon)
    est = omega_bar_estimate(seg, epsilon=epsilon, theta=theta, tail_fraction=tail_fraction)
    report = birkhoff_irregularity(seg, np.asarray(seg.samples), epsilon, tail_fraction)
    tail = seg.samples[-MIN_HORIZON:]
    collapsed = max(tail) - min(tail) <= system.tolerance
    if collapsed:
        logger.warning("tent orbit from %.6f collapsed onto %.6f", start, tail[-1])
    return TentMapExperiment(system, start, est, report, collapsed)
