"""Finite alphabets for symbolic systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from shadowlab.errors import BadWord, SchemaError

MAX_ALPHABET_SIZE = 2**16


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite list of distinct symbol identifiers."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise SchemaError("alphabet must contain at least one symbol", "alphabet")
        if len(self.symbols) > MAX_ALPHABET_SIZE:
            raise SchemaError(
                f"alphabet has {len(self.symbols)} symbols (limit {MAX_ALPHABET_SIZE})",
                "alphabet",
            )
        if len(set(self.symbols)) != len(self.symbols):
            raise SchemaError("alphabet symbols must be distinct", "alphabet")

    @classmethod
    def of(cls, symbols: Iterable[object]) -> Alphabet:
        return cls(tuple(str(s) for s in symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    @property
    def _index(self) -> dict[str, int]:
        # frozen dataclass: build lazily, cache on the instance dict
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {s: i for i, s in enumerate(self.symbols)}
            object.__setattr__(self, "_index_cache", cached)
        return cached

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise BadWord(f"unknown symbol {symbol!r}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def parse_word(self, word: str | Sequence[str]) -> tuple[int, ...]:
        """Translate a word into symbol indices.

        A plain string is split into characters when every symbol is a single
        character; otherwise words must be given as sequences of symbols.
        """
        if isinstance(word, str):
            if not self.single_char:
                raise BadWord(
                    f"word {word!r} must be a list of symbols for a multi-character alphabet"
                )
            parts: Sequence[str] = list(word)
        else:
            parts = [str(s) for s in word]
        return tuple(self.index(s) for s in parts)

    def render(self, indices: Iterable[int]) -> str:
        names = [self.symbols[i] for i in indices]
        return "".join(names) if self.single_char else " ".join(names)
