"""Configuration management with TOML loading."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 12):
    import tomllib
else:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib  # type: ignore[no-redef]

DEFAULT_CONFIG_DIR = ".shadowlab"
DEFAULT_CONFIG_FILE = "config.toml"
GLOBAL_CONFIG_DIR = Path.home() / ".shadowlab"


@dataclass
class EstimatorSettings:
    """Finite-horizon stand-ins for the asymptotic quantities."""

    theta: float = 0.01  # positive-density threshold
    tail_fraction: float = 0.5
    interval_epsilon: float = 1 / 64
    symbolic_epsilon_exponent: int = 4  # symbolic balls have radius 2^-r
    periodicity_bound: int = 64
    block_ratio: float = 4.0
    metric_depth: int = 32

    @property
    def symbolic_epsilon(self) -> float:
        return 2.0 ** -self.symbolic_epsilon_exponent


@dataclass
class ShadowingSettings:
    """Default schedules for the average-shadowing construction."""

    epsilon_decay: float = 0.5  # eps_j = decay^j
    delta_offset: int = 2  # delta_j = 2^-(j + offset)
    block_growth: int = 4  # n_{j+1} = growth * n_j
    first_block: int = 16


@dataclass
class RuntimeSettings:
    max_concurrent: int = 1
    debug: bool = False


@dataclass
class Settings:
    estimators: EstimatorSettings = field(default_factory=EstimatorSettings)
    shadowing: ShadowingSettings = field(default_factory=ShadowingSettings)
    runtime: RuntimeSettings = field(default_factory=RuntimeSettings)
    source: str | None = None

    @classmethod
    def load(cls, config_path: str | Path | None = None) -> "Settings":
        if config_path is None:
            # Search chain: project-local then global
            project_config = Path.cwd() / DEFAULT_CONFIG_DIR / DEFAULT_CONFIG_FILE
            global_config = GLOBAL_CONFIG_DIR / DEFAULT_CONFIG_FILE
            if project_config.exists():
                config_path = project_config
            elif global_config.exists():
                config_path = global_config

        raw: dict[str, Any] = {}

        if config_path is not None:
            config_path = Path(config_path)
            if config_path.exists():
                with open(config_path, "rb") as f:
                    raw = tomllib.load(f)

        settings = cls._from_dict(raw)
        settings.source = str(config_path) if config_path is not None else None
        return settings

    @classmethod
    def _from_dict(cls, data: dict[str, Any]) -> "Settings":
        est = data.get("estimators", {})
        estimators = EstimatorSettings(
            theta=float(est.get("theta", 0.01)),
            tail_fraction=float(est.get("tail_fraction", 0.5)),
            interval_epsilon=float(est.get("interval_epsilon", 1 / 64)),
            symbolic_epsilon_exponent=int(est.get("symbolic_epsilon_exponent", 4)),
            periodicity_bound=int(est.get("periodicity_bound", 64)),
            block_ratio=float(est.get("block_ratio", 4.0)),
            metric_depth=int(est.get("metric_depth", 32)),
        )

        sh = data.get("shadowing", {})
        shadowing = ShadowingSettings(
            epsilon_decay=float(sh.get("epsilon_decay", 0.5)),
            delta_offset=int(sh.get("delta_offset", 2)),
            block_growth=int(sh.get("block_growth", 4)),
            first_block=int(sh.get("first_block", 16)),
        )

        rt = data.get("runtime", {})
        runtime = RuntimeSettings(
            max_concurrent=int(rt.get("max_concurrent", 1)),
            debug=bool(data.get("debug", rt.get("debug", False))),
        )

        return cls(estimators=estimators, shadowing=shadowing, runtime=runtime)
