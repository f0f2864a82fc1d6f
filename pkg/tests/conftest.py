"""Shared test fixtures for the shadowlab test suite."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from shadowlab.systems import (
    FiniteMapSystem,
    IntervalMapSystem,
    SymbolicSystem,
    sft_from_forbidden_words,
)
from tests.helpers.systems import BINARY


# ---------------------------------------------------------------------------
# Symbolic systems
# ---------------------------------------------------------------------------


@pytest.fixture
def full_shift() -> SymbolicSystem:
    return sft_from_forbidden_words(BINARY, [])


@pytest.fixture
def golden_mean() -> SymbolicSystem:
    return sft_from_forbidden_words(BINARY, ["11"])


@pytest.fixture
def two_point() -> SymbolicSystem:
    """{(01)^inf, (10)^inf}: chain transitive with period 2."""
    return sft_from_forbidden_words(BINARY, ["00", "11"])


# ---------------------------------------------------------------------------
# Finite maps and interval maps
# ---------------------------------------------------------------------------


@pytest.fixture
def eventual_cycle() -> FiniteMapSystem:
    """0 -> 1 -> 2 -> 1 with the discrete metric."""
    return FiniteMapSystem.from_mapping({0: 1, 1: 2, 2: 1})


@pytest.fixture
def six_cycle() -> FiniteMapSystem:
    return FiniteMapSystem.from_mapping({i: (i + 1) % 6 for i in range(6)})


@pytest.fixture
def tent() -> IntervalMapSystem:
    return IntervalMapSystem.tent()


# ---------------------------------------------------------------------------
# Spec files
# ---------------------------------------------------------------------------


@pytest.fixture
def write_spec(tmp_path: Path):
    """Write a JSON system spec into tmp_path and return its path."""

    def _write(data: dict[str, Any] | str, name: str = "system.json") -> Path:
        path = tmp_path / name
        text = data if isinstance(data, str) else json.dumps(data)
        path.write_text(text, encoding="utf-8")
        return path

    return _write
