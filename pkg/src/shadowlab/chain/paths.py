"""Paths of prescribed length and the uniform length bound for equivalent pairs."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Iterable, Literal

import networkx as nx
import numpy as np

from shadowlab.chain.cyclic import CyclicDecomposition, component_subgraph
from shadowlab.chain.graph import TransitionGraph
from shadowlab.errors import BadParameter
from shadowlab.systems.finite import vertex_key

logger = logging.getLogger(__name__)

Certificate = Literal["all_n", "range"]


def path_of_length(
    graph: TransitionGraph, x: Hashable, y: Hashable, k: int
) -> list[Hashable] | None:
    """A walk x -> ... -> y with exactly k edges, or None.

    ``reach[j]`` holds the vertices with a j-step walk to y; the walk is read
    forward taking the least admissible successor at every step.
    """
    if k < 0:
        raise BadParameter(f"path length must be >= 0, got {k}")
    if x not in graph or y not in graph:
        return None
    reach: list[frozenset] = [frozenset((y,))]
    for _ in range(k):
        prev = reach[-1]
        layer: set = set()
        for v in prev:
            layer.update(graph.predecessors[v])
        reach.append(frozenset(layer))
    if x not in reach[k]:
        return None
    path = [x]
    for j in range(k - 1, -1, -1):
        nxt = next(v for v in graph.succ(path[-1]) if v in reach[j])
        path.append(nxt)
    return path


def cycle_lengths(graph: TransitionGraph, bound: int | None = None) -> list[int]:
    """Lengths k <= ``bound`` (default: vertex count) of closed walks.

    Read off the diagonals of boolean matrix powers. Every simple cycle length
    up to the bound is listed and every listed length is a sum of simple cycle
    lengths, so gcd and generated semigroup match those of the simple cycles.
    """
    verts = list(graph.vertices)
    if bound is None:
        bound = len(verts)
    a = nx.to_numpy_array(graph.nx, nodelist=verts, dtype=np.int64) > 0
    power = np.eye(len(verts), dtype=bool)
    lengths = []
    for k in range(1, bound + 1):
        power = (power.astype(np.int64) @ a.astype(np.int64)) > 0
        if power.diagonal().any():
            lengths.append(k)
    return lengths


def frobenius_number(values: Iterable[int]) -> int:
    """Largest integer not a nonnegative combination of ``values``.

    Returns -1 when every nonnegative integer is representable (1 among the
    values). The values must have gcd 1.
    """
    coins = sorted({int(v) for v in values if v > 0})
    if not coins:
        raise BadParameter("need at least one positive value")
    g = 0
    for c in coins:
        g = gcd(g, c)
    if g != 1:
        raise BadParameter(f"values have gcd {g}; the semigroup has no Frobenius number")
    if coins[0] == 1:
        return -1
    # a run of coins[0] representable integers means everything beyond is too
    limit = coins[0] * coins[-1] + coins[-1]
    reachable = np.zeros(limit + 1, dtype=bool)
    reachable[0] = True
    last_missing = -1
    run = 0
    for n in range(1, limit + 1):
        reachable[n] = any(n >= c and reachable[n - c] for c in coins)
        if reachable[n]:
            run += 1
            if run == coins[0]:
                break
        else:
            last_missing = n
            run = 0
    return last_missing


@dataclass(frozen=True)
class UniformChainBound:
    """Least N with a walk of length m*n for every equivalent pair and n >= N.

    ``certificate`` is ``"all_n"`` when the sequence of reachability matrices
    stabilized inside the checked range, so the bound holds for every n;
    ``"range"`` means it is certified only for N <= n <= ``n_max``.
    """

    N: int
    m: int
    n_max: int
    certificate: Certificate
    pair_bounds: dict[tuple[Hashable, Hashable], int] = field(default_factory=dict)

    def witness(self, graph: TransitionGraph, x: Hashable, y: Hashable, n: int):
        return path_of_length(graph, x, y, self.m * n)


def uniform_chain_bound(
    graph: TransitionGraph, decomposition: CyclicDecomposition
) -> UniformChainBound:
    sub = component_subgraph(decomposition.vertices, graph)
    verts = sorted(sub.nodes, key=vertex_key)
    m = decomposition.m
    size = len(verts)

    lengths = cycle_lengths(graph.subgraph(verts), bound=size)
    frob = frobenius_number(length // m for length in lengths)
    l_max = size * size * m + m * max(frob, 0)
    n_max = max(1, l_max // m)

    a = nx.to_numpy_array(sub, nodelist=verts, dtype=np.int64) > 0
    step = np.eye(size, dtype=bool)
    for _ in range(m):
        step = (step.astype(np.int64) @ a.astype(np.int64)) > 0

    classes = np.array([decomposition.class_of[v] for v in verts])
    equivalent = classes[:, None] == classes[None, :]

    last_missing = np.zeros((size, size), dtype=np.int64)
    current = step
    certificate: Certificate = "range"
    for n in range(1, n_max + 1):
        if n > 1:
            nxt = (current.astype(np.int64) @ step.astype(np.int64)) > 0
            if np.array_equal(nxt, current):
                certificate = "all_n"
                break
            current = nxt
        missing = equivalent & ~current
        last_missing[missing] = n

    if certificate == "range":
        logger.warning(
            "reachability did not stabilize by n=%d; bound certified for the range only", n_max
        )
    pair_bounds = {
        (verts[i], verts[j]): int(last_missing[i, j]) + 1
        for i in range(size)
        for j in range(size)
        if equivalent[i, j]
    }
    bound = max(pair_bounds.values(), default=1)
    logger.debug("uniform chain bound N=%d (m=%d, n_max=%d, %s)", bound, m, n_max, certificate)
    return UniformChainBound(bound, m, n_max, certificate, pair_bounds)
