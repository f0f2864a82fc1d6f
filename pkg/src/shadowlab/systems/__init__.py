"""Desk-scale dynamical systems: SFTs, finite metric maps, interval maps."""

from shadowlab.systems.alphabet import Alphabet
from shadowlab.systems.entropy import spectral_radius, topological_entropy
from shadowlab.systems.finite import FiniteMapSystem
from shadowlab.systems.interval import IntervalMapSystem
from shadowlab.systems.orbit import DynamicalSystem, OrbitSegment, ShiftOrbit, System, orbit
from shadowlab.systems.points import (
    MetricReading,
    SymbolicPoint,
    coincidence_time,
    sequence_metric,
    shift_distances,
)
from shadowlab.systems.symbolic import SymbolicSystem, sft_from_forbidden_words

__all__ = [
    "Alphabet",
    "DynamicalSystem",
    "FiniteMapSystem",
    "IntervalMapSystem",
    "MetricReading",
    "OrbitSegment",
    "ShiftOrbit",
    "SymbolicPoint",
    "SymbolicSystem",
    "System",
    "coincidence_time",
    "orbit",
    "sequence_metric",
    "sft_from_forbidden_words",
    "shift_distances",
    "spectral_radius",
    "topological_entropy",
]
