"""JSON system specs: parse into system values and print them back."""

from __future__ import annotations

import json
import re
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from shadowlab.errors import BadParameter, SchemaError
from shadowlab.systems import (
    Alphabet,
    FiniteMapSystem,
    IntervalMapSystem,
    SymbolicPoint,
    SymbolicSystem,
    System,
    sft_from_forbidden_words,
)

_POINT = re.compile(r"^(?P<prefix>[^()]*)\((?P<period>[^()]+)\)$")


class SFTSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["sft"]
    alphabet: list[str] = Field(min_length=1)
    forbidden: list[str | list[str]] | None = None
    allowed: list[list[int]] | None = None

    @model_validator(mode="after")
    def _one_presentation(self) -> SFTSpec:
        if (self.forbidden is None) == (self.allowed is None):
            raise ValueError("give exactly one of 'forbidden' or 'allowed'")
        return self


class LineMetric(BaseModel):
    model_config = ConfigDict(extra="forbid")

    line: dict[str, float]


class FiniteMapSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["finite_map"]
    points: list[str] = Field(min_length=1)
    map: dict[str, str]
    metric: Literal["discrete"] | list[list[float]] | LineMetric = "discrete"


class IntervalSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["interval_pl"]
    breakpoints: list[float]
    values: list[float]


SystemSpec = Annotated[Union[SFTSpec, FiniteMapSpec, IntervalSpec], Field(discriminator="kind")]
_adapter: TypeAdapter[SFTSpec | FiniteMapSpec | IntervalSpec] = TypeAdapter(SystemSpec)


def _location(error: ValidationError) -> tuple[str, str]:
    first = error.errors()[0]
    path = ".".join(str(part) for part in first["loc"])
    return first["msg"], path


def load_spec_model(data: Any) -> SFTSpec | FiniteMapSpec | IntervalSpec:
    try:
        return _adapter.validate_python(data)
    except ValidationError as e:
        msg, path = _location(e)
        raise SchemaError(msg, path) from None


def build_system(model: SFTSpec | FiniteMapSpec | IntervalSpec) -> System:
    if isinstance(model, SFTSpec):
        alphabet = Alphabet.of(model.alphabet)
        if model.forbidden is not None:
            return sft_from_forbidden_words(alphabet, model.forbidden)
        return SymbolicSystem.from_matrix(alphabet, model.allowed)
    if isinstance(model, FiniteMapSpec):
        if model.metric == "discrete":
            return FiniteMapSystem.from_mapping(model.map, None, model.points)
        if isinstance(model.metric, LineMetric):
            missing = [p for p in model.points if p not in model.metric.line]
            if missing:
                raise SchemaError(f"no position for {missing[:3]}", "metric.line")
            positions = {p: model.metric.line[p] for p in model.points}
            return FiniteMapSystem.on_line(positions, model.map)
        return FiniteMapSystem.from_mapping(model.map, model.metric, model.points)
    return IntervalMapSystem(tuple(model.breakpoints), tuple(model.values))


def parse_system_spec(text: str) -> System:
    """Build a system from its JSON spec.

    Raises SchemaError with a ``line L column C`` or field-path location, or
    the construction errors of the system itself (EmptySubshift, BadMetric).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return build_system(load_spec_model(data))


def _forbidden_blocks(system: SymbolicSystem) -> list[list[str]]:
    """Every (memory+1)-word over the base alphabet the system never shows."""
    base = system.base_alphabet
    n = system.memory + 1
    seen = system.language(n)
    words = [tuple(base.symbols[i] for i in idx) for idx in np.ndindex(*(len(base),) * n)]
    return [list(w) for w in words if w not in seen]


def system_to_dict(system: System) -> dict[str, Any]:
    if isinstance(system, SymbolicSystem):
        base = system.base_alphabet
        out: dict[str, Any] = {"kind": "sft", "alphabet": list(base.symbols)}
        if system.memory > 1:
            blocks = _forbidden_blocks(system)
            if base.single_char:
                out["forbidden"] = ["".join(w) for w in blocks]
            else:
                out["forbidden"] = blocks
            return out
        matrix = [[0] * len(base) for _ in range(len(base))]
        for a in range(system.size):
            for b in system.successors(a):
                i = base.index(system.blocks[a][0])
                j = base.index(system.blocks[b][0])
                matrix[i][j] = 1
        out["allowed"] = matrix
        return out
    if isinstance(system, FiniteMapSystem):
        labels = [str(p) for p in system.points]
        if len(set(labels)) != len(labels):
            raise BadParameter("point labels must stay distinct as strings")
        table = np.asarray(system.metric)
        discrete = np.array_equal(table, 1.0 - np.eye(system.size))
        return {
            "kind": "finite_map",
            "points": labels,
            "map": {str(p): str(q) for p, q in system.mapping().items()},
            "metric": "discrete" if discrete else [list(row) for row in system.metric],
        }
    return {
        "kind": "interval_pl",
        "breakpoints": list(system.breakpoints),
        "values": list(system.values),
    }


def print_system_spec(system: System) -> str:
    return json.dumps(system_to_dict(system), indent=2, sort_keys=True)


def parse_point(system: System, value: Any) -> Any:
    """A point of ``system`` from its CLI or JSON form.

    Symbolic points are written ``prefix(period)``, e.g. ``"01(10)"``; a bare
    word means its periodic repetition. Symbols of multi-character alphabets
    are separated by spaces. A mapping with ``prefix``/``period`` lists works
    too. Finite-map points are labels and interval points are numbers.
    """
    if isinstance(system, SymbolicSystem):
        if isinstance(value, dict):
            return system.point(value.get("prefix", []), value["period"])
        if isinstance(value, list):
            return system.point([], [str(s) for s in value])
        text = str(value).strip()
        match = _POINT.match(text)
        prefix, period = (match["prefix"], match["period"]) if match else ("", text)
        if not system.alphabet.single_char:
            return system.point(prefix.split(), period.split())
        return system.point(prefix, period)
    if isinstance(system, FiniteMapSystem):
        if not system.contains(value):
            raise SchemaError(f"unknown point {value!r}", "points")
        return value
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise SchemaError(f"interval point must be a number, got {value!r}", "start") from None
    if not system.contains(x):
        raise SchemaError(f"interval point {x} lies outside [0, 1]", "start")
    return x


def render_point(point: Any) -> Any:
    if isinstance(point, SymbolicPoint):
        return point.label()
    return point
