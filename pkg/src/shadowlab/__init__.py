"""shadowlab: shadowing, cyclic decompositions and statistical chaos detectors."""

__version__ = "0.3.0"

from shadowlab.errors import AnalysisError, ShadowLabError, SpecValidationError  # noqa: E402
from shadowlab.systems import (  # noqa: E402
    Alphabet,
    FiniteMapSystem,
    IntervalMapSystem,
    SymbolicPoint,
    SymbolicSystem,
    orbit,
    sft_from_forbidden_words,
)

__all__ = [
    "Alphabet",
    "AnalysisError",
    "FiniteMapSystem",
    "IntervalMapSystem",
    "ShadowLabError",
    "SpecValidationError",
    "SymbolicPoint",
    "SymbolicSystem",
    "__version__",
    "orbit",
    "sft_from_forbidden_words",
]
