"""One-step subshifts of finite type and their forbidden-word presentation."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from shadowlab.errors import BadParameter, BadWord, EmptySubshift, SchemaError
from shadowlab.systems.alphabet import Alphabet
from shadowlab.systems.points import SymbolicPoint, sequence_metric

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 32


def _prune(allowed: np.ndarray) -> np.ndarray:
    """Indices of the maximal subgraph where every vertex has in- and out-edges."""
    keep = np.arange(allowed.shape[0])
    while keep.size:
        sub = allowed[np.ix_(keep, keep)]
        alive = sub.any(axis=1) & sub.any(axis=0)
        if alive.all():
            break
        keep = keep[alive]
    return keep


@dataclass(frozen=True)
class SymbolicSystem:
    """Shift map on the one-step SFT given by ``allowed``.

    ``blocks[i]`` is the word over ``base_alphabet`` that state ``i`` stands
    for; for a system built from one-step data the blocks are single symbols.
    """

    alphabet: Alphabet
    allowed: tuple[tuple[bool, ...], ...]
    memory: int = 1
    blocks: tuple[tuple[str, ...], ...] = ()
    base_alphabet: Alphabet | None = None
    depth: int = field(default=DEFAULT_DEPTH, compare=False)

    kind = "sft"

    def __post_init__(self) -> None:
        n = len(self.alphabet)
        if len(self.allowed) != n or any(len(row) != n for row in self.allowed):
            raise SchemaError("allowed matrix must be square over the alphabet", "allowed")
        matrix = np.array(self.allowed, dtype=bool).reshape(n, n)
        if not (matrix.any(axis=1) & matrix.any(axis=0)).all():
            raise SchemaError("allowed matrix is not pruned", "allowed")
        if not self.blocks:
            object.__setattr__(self, "blocks", tuple((s,) for s in self.alphabet.symbols))
        if self.base_alphabet is None:
            object.__setattr__(self, "base_alphabet", self.alphabet)

    @classmethod
    def from_matrix(
        cls, alphabet: Alphabet, allowed: Sequence[Sequence[bool | int]]
    ) -> SymbolicSystem:
        """Prune ``allowed`` and build the one-step system on what survives."""
        matrix = np.array(allowed, dtype=bool)
        n = len(alphabet)
        if matrix.shape != (n, n):
            raise SchemaError(
                f"allowed matrix has shape {matrix.shape}, expected {(n, n)}", "allowed"
            )
        keep = _prune(matrix)
        if keep.size == 0:
            raise EmptySubshift("pruning removed every symbol")
        if keep.size < n:
            logger.info("pruned %d symbols without in/out transitions", n - keep.size)
        sub = matrix[np.ix_(keep, keep)]
        kept = Alphabet(tuple(alphabet.symbols[i] for i in keep))
        return cls(
            alphabet=kept,
            allowed=tuple(tuple(bool(v) for v in row) for row in sub),
            memory=1,
            blocks=tuple((s,) for s in kept.symbols),
            base_alphabet=alphabet,
        )

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.allowed, dtype=bool)

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def successors(self, state: int) -> list[int]:
        return [j for j, ok in enumerate(self.allowed[state]) if ok]

    def is_allowed(self, a: int, b: int) -> bool:
        return self.allowed[a][b]

    def point(self, prefix: str | Sequence[str], period: str | Sequence[str]) -> SymbolicPoint:
        p = SymbolicPoint.from_word(self.alphabet, prefix, period)
        if not self.contains(p):
            raise BadWord(f"point {p.label()} is not admissible")
        return p

    def contains(self, point: object) -> bool:
        if not isinstance(point, SymbolicPoint) or point.alphabet != self.alphabet:
            return False
        seq = point.prefix + point.period + point.period[:1]
        return all(self.allowed[a][b] for a, b in zip(seq, seq[1:]))

    def step(self, point: SymbolicPoint) -> SymbolicPoint:
        return point.shift(1)

    def distance(self, x: SymbolicPoint, y: SymbolicPoint) -> float:
        return sequence_metric(x, y, self.depth).value

    def paths(self, length: int) -> Iterator[tuple[int, ...]]:
        """All state paths with ``length`` vertices."""
        if length <= 0:
            yield ()
            return
        stack: list[tuple[int, ...]] = [(s,) for s in range(self.size)]
        while stack:
            path = stack.pop()
            if len(path) == length:
                yield path
                continue
            stack.extend(path + (t,) for t in self.successors(path[-1]))

    def language(self, n: int) -> set[tuple[str, ...]]:
        """Admissible words of length ``n`` over the base alphabet."""
        words: set[tuple[str, ...]] = set()
        if n <= 0:
            return {()}
        if n < self.memory:
            return {block[:n] for block in self.blocks}
        for path in self.paths(n - self.memory + 1):
            first = self.blocks[path[0]]
            words.add(first + tuple(self.blocks[s][-1] for s in path[1:]))
        return words

    def words(self, n: int) -> set[tuple[int, ...]]:
        """Admissible words of length ``n`` over the state alphabet."""
        return set(self.paths(n))

    def periodic_points(self, p: int) -> list[SymbolicPoint]:
        """Points with sigma^p x = x, in lexicographic order of their first p symbols."""
        if p < 1:
            raise BadParameter(f"period must be >= 1, got {p}")
        closed = [path[:-1] for path in self.paths(p + 1) if path[0] == path[-1]]
        return [SymbolicPoint(self.alphabet, (), w) for w in sorted(closed)]

    def periodic_word(self, states: Sequence[int]) -> SymbolicPoint:
        return SymbolicPoint(self.alphabet, (), tuple(states))

    def complete(self, word: Sequence[int]) -> SymbolicPoint:
        """Extend an admissible word into an eventually periodic point.

        The word is continued by lexicographically least successors until a
        state repeats; the repeated stretch becomes the period.
        """
        if not word:
            raise BadWord("cannot complete an empty word")
        seq = list(word)
        seen: dict[int, int] = {}
        while seq[-1] not in seen:
            seen[seq[-1]] = len(seq) - 1
            seq.append(self.successors(seq[-1])[0])
        start = seen[seq[-1]]
        return SymbolicPoint(self.alphabet, tuple(seq[:start]), tuple(seq[start:-1]))

    def project(self, point: SymbolicPoint, n: int) -> tuple[str, ...]:
        """First ``n`` symbols of ``point`` read over the base alphabet."""
        return tuple(self.blocks[s][0] for s in point.word(n))


def sft_from_forbidden_words(
    alphabet: Alphabet, forbidden: Sequence[str | Sequence[str]]
) -> SymbolicSystem:
    """One-step recoding of the subshift avoiding every word in ``forbidden``.

    States are the allowed N-blocks with N = max(1, longest forbidden - 1);
    block u may be followed by block v when they overlap in N-1 symbols and
    the (N+1)-word they span avoids every forbidden word.
    """
    words = []
    for w in forbidden:
        parsed = alphabet.parse_word(w)
        if not parsed:
            raise BadWord("forbidden words must be nonempty")
        words.append(parsed)
    memory = max([1] + [len(w) - 1 for w in words])
    banned = set(words)
    lengths = sorted({len(w) for w in words})

    def clean(word: tuple[int, ...]) -> bool:
        # only windows ending at the last symbol are new when extending one at a time
        return not any(
            len(word) >= k and word[len(word) - k :] in banned for k in lengths
        )

    blocks: list[tuple[int, ...]] = []
    stack: list[tuple[int, ...]] = [(a,) for a in range(len(alphabet)) if clean((a,))]
    while stack:
        w = stack.pop()
        if len(w) == memory:
            blocks.append(w)
            continue
        stack.extend(w + (a,) for a in range(len(alphabet)) if clean(w + (a,)))
    blocks.sort()
    if not blocks:
        raise EmptySubshift("every block of the presentation contains a forbidden word")

    index = {b: i for i, b in enumerate(blocks)}
    matrix = np.zeros((len(blocks), len(blocks)), dtype=bool)
    for u in blocks:
        for a in range(len(alphabet)):
            span = u + (a,)
            if not clean(span):
                continue
            v = span[1:]
            if v in index:
                matrix[index[u], index[v]] = True

    keep = _prune(matrix)
    if keep.size == 0:
        raise EmptySubshift("pruning removed every block")
    kept = [blocks[i] for i in keep]
    names = [alphabet.render(b) for b in kept]
    if memory > 1 and not alphabet.single_char:
        names = ["|".join(alphabet.symbols[s] for s in b) for b in kept]
    logger.debug(
        "recoded %d forbidden words: memory %d, %d of %d blocks kept",
        len(words),
        memory,
        len(kept),
        len(blocks),
    )
    return SymbolicSystem(
        alphabet=Alphabet(tuple(names)),
        allowed=tuple(tuple(bool(v) for v in row) for row in matrix[np.ix_(keep, keep)]),
        memory=memory,
        blocks=tuple(tuple(alphabet.symbols[s] for s in b) for b in kept),
        base_alphabet=alphabet,
    )
