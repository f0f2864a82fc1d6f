"""Configuration management."""

from shadowlab.config.experiment import ExperimentParams, ExperimentSpec
from shadowlab.config.settings import (
    EstimatorSettings,
    RuntimeSettings,
    Settings,
    ShadowingSettings,
)

__all__ = [
    "EstimatorSettings",
    "ExperimentParams",
    "ExperimentSpec",
    "RuntimeSettings",
    "Settings",
    "ShadowingSettings",
]
