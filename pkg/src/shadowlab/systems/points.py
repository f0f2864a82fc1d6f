"""Eventually periodic one-sided symbol sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from shadowlab.errors import AlphabetMismatch, BadParameter, SchemaError
from shadowlab.systems.alphabet import Alphabet


def _primitive_root(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for p in range(1, n):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


@dataclass(frozen=True)
class SymbolicPoint:
    """x = prefix · period^∞ over ``alphabet``, stored as symbol indices.

    Instances are always in normal form: the period is primitive and the last
    prefix symbol differs from the last period symbol. Two points are equal as
    sequences iff their normal forms are equal.
    """

    alphabet: Alphabet
    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise SchemaError("period word must be nonempty", "period")
        size = len(self.alphabet)
        if any(not 0 <= s < size for s in self.prefix + self.period):
            raise SchemaError("symbol index outside the alphabet", "point")
        period = _primitive_root(tuple(self.period))
        prefix = tuple(self.prefix)
        p = len(period)
        cut = len(prefix)
        while cut and prefix[cut - 1] == period[(cut - 1 - len(prefix)) % p]:
            cut -= 1
        r = (cut - len(prefix)) % p
        period = period[r:] + period[:r]
        prefix = prefix[:cut]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def _normal(
        cls, alphabet: Alphabet, prefix: tuple[int, ...], period: tuple[int, ...]
    ) -> SymbolicPoint:
        """Build from parts already in normal form, skipping normalization."""
        point = object.__new__(cls)
        object.__setattr__(point, "alphabet", alphabet)
        object.__setattr__(point, "prefix", prefix)
        object.__setattr__(point, "period", period)
        return point

    @classmethod
    def from_word(
        cls,
        alphabet: Alphabet,
        prefix: str | Sequence[str],
        period: str | Sequence[str],
    ) -> SymbolicPoint:
        return cls(alphabet, alphabet.parse_word(prefix), alphabet.parse_word(period))

    @classmethod
    def constant(cls, alphabet: Alphabet, symbol: str) -> SymbolicPoint:
        return cls(alphabet, (), (alphabet.index(symbol),))

    @property
    def preperiod(self) -> int:
        return len(self.prefix)

    @property
    def period_length(self) -> int:
        return len(self.period)

    @property
    def is_periodic(self) -> bool:
        return not self.prefix

    def symbol(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def word(self, n: int) -> tuple[int, ...]:
        if n <= len(self.prefix):
            return self.prefix[:n]
        rest = n - len(self.prefix)
        reps = -(-rest // len(self.period))
        return self.prefix + (self.period * reps)[:rest]

    def word_array(self, n: int) -> np.ndarray:
        return np.fromiter(self.word(n), dtype=np.int64, count=n)

    def shift(self, k: int = 1) -> SymbolicPoint:
        if k < 0:
            raise BadParameter("shift amount must be nonnegative")
        if k == 0:
            return self
        if k < len(self.prefix):
            return SymbolicPoint._normal(self.alphabet, self.prefix[k:], self.period)
        r = (k - len(self.prefix)) % len(self.period)
        return SymbolicPoint._normal(self.alphabet, (), self.period[r:] + self.period[:r])

    def agreement(self, other: SymbolicPoint, depth: int) -> int | None:
        """Least index < depth where the sequences differ, or None."""
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("points live over different alphabets")
        for j, (a, b) in enumerate(zip(self.word(depth), other.word(depth))):
            if a != b:
                return j
        return None

    def label(self) -> str:
        head = self.alphabet.render(self.prefix)
        return f"{head}({self.alphabet.render(self.period)})"

    def __repr__(self) -> str:
        return f"SymbolicPoint({self.label()})"


@dataclass(frozen=True)
class MetricReading:
    """Result of ``sequence_metric``.

    ``index`` is the first disagreement index when one was found below the
    inspected depth. ``truncated`` marks readings where the sequences agree up
    to the depth but differ beyond it; ``value`` is then the upper bound
    ``2^-depth``.
    """

    value: float
    index: int | None
    truncated: bool = False


def sequence_metric(x: SymbolicPoint, y: SymbolicPoint, depth: int) -> MetricReading:
    """d(x, y) = 2^-k with k the least 0-based disagreement index."""
    if depth < 1:
        raise BadParameter(f"depth must be >= 1, got {depth}")
    k = x.agreement(y, depth)
    if k is not None:
        return MetricReading(2.0**-k, k)
    if x == y:
        return MetricReading(0.0, None)
    return MetricReading(2.0**-depth, None, truncated=True)


def shift_distances(x: SymbolicPoint, targets: Sequence[SymbolicPoint], depth: int) -> np.ndarray:
    """d(sigma^i x, targets[i]) for every i, read from one word array of x."""
    if depth < 1:
        raise BadParameter(f"depth must be >= 1, got {depth}")
    n = len(targets)
    if n == 0:
        return np.zeros(0)
    if any(t.alphabet != x.alphabet for t in targets):
        raise AlphabetMismatch("points live over different alphabets")
    own = x.word_array(n - 1 + depth)
    windows = np.lib.stride_tricks.sliding_window_view(own, depth)[:n]
    other = np.array([t.word(depth) for t in targets], dtype=np.int64).reshape(n, depth)
    diff = windows != other
    differs = diff.any(axis=1)
    out = np.where(differs, np.exp2(-diff.argmax(axis=1).astype(float)), 0.0)
    for i in np.flatnonzero(~differs):
        t = targets[int(i)]
        # equal sequences have equal normal forms, so preperiods must match first
        if max(0, x.preperiod - int(i)) != t.preperiod or x.shift(int(i)) != t:
            out[i] = 2.0**-depth
    return out


def coincidence_time(x: SymbolicPoint, y: SymbolicPoint) -> int | None:
    """Least i with sigma^i x == sigma^i y, or None when the orbits never meet."""
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch("points live over different alphabets")
    pre = max(x.preperiod, y.preperiod)
    span = pre + math.lcm(x.period_length, y.period_length)
    a, b = x.word_array(span), y.word_array(span)
    diff = np.flatnonzero(a != b)
    if diff.size and diff[-1] >= pre:
        return None
    return int(diff[-1]) + 1 if diff.size else 0
