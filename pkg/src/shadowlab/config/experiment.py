"""Experiment schema using Pydantic v2."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

Command = Literal[
    "decompose",
    "dsp-check",
    "shadow",
    "avg-shadow",
    "omega-bar",
    "dc2-scan",
    "irregular-scan",
    "scrambled-check",
    "measure-center",
    "entropy",
]

RANDOMIZED_COMMANDS = frozenset({"dsp-check", "shadow", "avg-shadow", "irregular-scan"})

SEED_MAX = 2**64 - 1


class ExperimentParams(BaseModel):
    """Knobs shared by the analyses; each analysis reads the ones it needs."""

    model_config = ConfigDict(extra="forbid")

    m: int = Field(3, ge=1, description="delta = 2^-m")
    horizon: int | None = Field(None, ge=1)
    seed: int | None = Field(None, ge=0, le=SEED_MAX)
    theta: float | None = Field(None, gt=0, lt=1)
    tail: float | None = Field(None, gt=0, le=1)
    ratio: float | None = Field(None, ge=2)
    trials: int = Field(20, ge=1)
    length: int = Field(64, ge=1)
    start: str | list[str] | None = None
    other: str | list[str] | None = None
    points: list[Any] | None = None
    epsilon: float | None = Field(None, gt=0)


class ExperimentSpec(BaseModel):
    """One invocation: a command, the system it runs on and its parameters."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    system: dict[str, Any] | Path
    params: ExperimentParams = Field(default_factory=ExperimentParams)
    out: Path | None = None

    @model_validator(mode="after")
    def _seed_for_random_commands(self) -> ExperimentSpec:
        if self.command in RANDOMIZED_COMMANDS and self.params.seed is None:
            raise ValueError(f"command {self.command!r} is randomized and needs a seed")
        return self

    @property
    def randomized(self) -> bool:
        return self.command in RANDOMIZED_COMMANDS

    def system_text(self) -> str:
        """The system spec as JSON text, read from disk when given as a path."""
        if isinstance(self.system, Path):
            return self.system.read_text(encoding="utf-8")
        return json.dumps(self.system)
