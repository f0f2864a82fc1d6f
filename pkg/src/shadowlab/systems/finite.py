"""Finite metric spaces with a self-map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from shadowlab.errors import BadMetric, SchemaError

METRIC_TOLERANCE = 1e-12


def vertex_key(v: Hashable) -> tuple[str, object]:
    """Sort key that orders same-typed labels naturally and groups mixed types."""
    return (type(v).__name__, v)


@dataclass(frozen=True)
class FiniteMapSystem:
    """(X, d, f) with X a finite list of labelled points."""

    points: tuple[Hashable, ...]
    image: tuple[int, ...]
    metric: tuple[tuple[float, ...], ...]

    kind = "finite_map"

    def __post_init__(self) -> None:
        n = len(self.points)
        if n == 0:
            raise SchemaError("finite map needs at least one point", "points")
        if len(set(self.points)) != n:
            raise SchemaError("point labels must be distinct", "points")
        if len(self.image) != n or any(not 0 <= j < n for j in self.image):
            raise SchemaError("map must be total on the point list", "map")
        d = np.asarray(self.metric, dtype=float)
        if d.shape != (n, n):
            raise BadMetric(f"metric table has shape {d.shape}, expected {(n, n)}")
        if (d < 0).any():
            raise BadMetric("metric has negative entries")
        if np.abs(np.diag(d)).max() > 0:
            raise BadMetric("metric diagonal must be zero")
        if not np.allclose(d, d.T, atol=METRIC_TOLERANCE, rtol=0):
            raise BadMetric("metric is not symmetric")
        off = d + np.eye(n)
        if n > 1 and (off <= 0).any():
            raise BadMetric("distinct points at distance zero")
        # d[i, k] <= d[i, j] + d[j, k] for all i, j, k
        through = d[:, :, None] + d[None, :, :]
        if (d[:, None, :] > through + METRIC_TOLERANCE).any():
            raise BadMetric("metric violates the triangle inequality")

    @classmethod
    def from_mapping(
        cls,
        mapping: Mapping[Hashable, Hashable],
        metric: Sequence[Sequence[float]] | None = None,
        points: Sequence[Hashable] | None = None,
    ) -> FiniteMapSystem:
        """Build from a label->label map; the default metric is discrete."""
        labels = tuple(points) if points is not None else tuple(mapping)
        index = {p: i for i, p in enumerate(labels)}
        missing = [p for p in labels if p not in mapping]
        if missing:
            raise SchemaError(f"map undefined at {missing[:3]}", "map")
        try:
            image = tuple(index[mapping[p]] for p in labels)
        except KeyError as e:
            raise SchemaError(f"map sends a point outside the space: {e.args[0]!r}", "map")
        if metric is None:
            n = len(labels)
            metric = (1.0 - np.eye(n)).tolist()
        return cls(labels, image, tuple(tuple(float(v) for v in row) for row in metric))

    @classmethod
    def on_line(
        cls, positions: Mapping[Hashable, float], mapping: Mapping[Hashable, Hashable]
    ) -> FiniteMapSystem:
        """Points placed on the real line with d(x, y) = |x - y|."""
        labels = tuple(positions)
        coords = np.array([float(positions[p]) for p in labels])
        table = np.abs(coords[:, None] - coords[None, :])
        return cls.from_mapping(mapping, table.tolist(), labels)

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, label: Hashable) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise SchemaError(f"unknown point {label!r}", "points") from None

    def contains(self, label: object) -> bool:
        return label in self.points

    def step(self, label: Hashable) -> Hashable:
        return self.points[self.image[self.index(label)]]

    def distance(self, x: Hashable, y: Hashable) -> float:
        return self.metric[self.index(x)][self.index(y)]

    def power(self, m: int) -> FiniteMapSystem:
        """The system (X, d, f^m)."""
        image = list(range(self.size))
        for _ in range(m):
            image = [self.image[j] for j in image]
        return FiniteMapSystem(self.points, tuple(image), self.metric)

    def mapping(self) -> dict[Hashable, Hashable]:
        return {p: self.points[j] for p, j in zip(self.points, self.image)}

    def cycles(self) -> list[tuple[Hashable, ...]]:
        """Every periodic orbit, each listed from its least label in map order."""
        state = [0] * self.size  # 0 unseen, 1 on current walk, 2 done
        found: list[tuple[Hashable, ...]] = []
        for s in range(self.size):
            walk: list[int] = []
            v = s
            while state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = self.image[v]
            if state[v] == 1:
                cyc = walk[walk.index(v) :]
                labels = [self.points[i] for i in cyc]
                k = min(range(len(labels)), key=lambda i: vertex_key(labels[i]))
                found.append(tuple(labels[k:] + labels[:k]))
            for w in walk:
                state[w] = 2
        return sorted(found, key=lambda c: vertex_key(c[0]))
