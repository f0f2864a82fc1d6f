"""Run one experiment and package the result as a versioned report."""

from __future__ import annotations

import hashlib
import json
import logging
import math
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import numpy as np

from shadowlab import __version__
from shadowlab.cli.analyses import AnalysisRegistry, default_registry
from shadowlab.cli.specs import parse_system_spec
from shadowlab.config import ExperimentSpec, Settings
from shadowlab.errors import AnalysisError
from shadowlab.systems import SymbolicSystem

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 12


def canonical(value: Any) -> Any:
    """JSON-ready copy: floats cut to 12 significant digits, sets sorted."""
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((canonical(v) for v in value), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return value


def canonical_json(value: Any) -> str:
    return json.dumps(canonical(value), sort_keys=True, indent=2)


@dataclass(frozen=True)
class Report:
    command: str
    version: str
    input_hash: str
    payload: dict[str, Any]
    wall_clock: float
    seed: int | None
    schema_version: int = SCHEMA_VERSION

    @property
    def payload_json(self) -> str:
        return canonical_json(self.payload)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "version": self.version,
            "input_hash": self.input_hash,
            "seed": self.seed,
            "wall_clock": self.wall_clock,
            "results": self.payload,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")
        return path


def input_hash(spec: ExperimentSpec, system_text: str) -> str:
    """sha256 over the command, the parameters and the system spec text."""
    head = json.dumps(
        {"command": spec.command, "params": spec.params.model_dump(mode="json")},
        sort_keys=True,
    )
    return hashlib.sha256((head + "\n" + system_text).encode("utf-8")).hexdigest()


def run(
    spec: ExperimentSpec,
    settings: Settings | None = None,
    registry: AnalysisRegistry | None = None,
) -> Report:
    """Parse the system, dispatch the command and collect a report.

    Analysis errors leave with the name of the command that raised them when
    the module did not name a stage itself.
    """
    settings = settings or Settings()
    registry = registry or default_registry()
    analysis = registry.get_required(spec.command)
    text = spec.system_text()
    system = parse_system_spec(text)
    if isinstance(system, SymbolicSystem):
        system = replace(system, depth=settings.estimators.metric_depth)
    logger.info("running %s on a %s system", spec.command, system.kind)

    started = time.perf_counter()
    try:
        payload = analysis.execute(system, spec.params, settings)
    except AnalysisError as e:
        if e.stage is None:
            e.stage = analysis.name
        raise
    elapsed = time.perf_counter() - started

    report = Report(
        command=spec.command,
        version=__version__,
        input_hash=input_hash(spec, text),
        payload=canonical(payload),
        wall_clock=round(elapsed, 6),
        seed=spec.params.seed,
    )
    if spec.out is not None:
        report.write(spec.out)
        logger.info("report written to %s", spec.out)
    return report
