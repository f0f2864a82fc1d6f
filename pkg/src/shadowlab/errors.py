"""Exception hierarchy shared by every shadowlab module.

Two families matter to callers: ``SpecValidationError`` (bad input, CLI exit
code 2) and ``AnalysisError`` (the analysis could not be carried out, CLI exit
code 3).
"""

from __future__ import annotations


class ShadowLabError(Exception):
    """Root of all shadowlab errors."""


class SpecValidationError(ShadowLabError):
    """Input rejected before any analysis ran."""


class AnalysisError(ShadowLabError):
    """An analysis could not produce a result for valid input."""

    def __init__(self, message: str, stage: str | None = None) -> None:
        super().__init__(message)
        self.stage = stage


class SchemaError(SpecValidationError):
    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class EmptySubshift(SpecValidationError):
    pass


class BadWord(SpecValidationError):
    pass


class BadMetric(SpecValidationError):
    pass


class BadDelta(SpecValidationError):
    pass


class AlphabetMismatch(SpecValidationError):
    pass


class BadParameter(SpecValidationError):
    pass


class NotStronglyConnected(AnalysisError):
    pass


class DifferentComponents(AnalysisError):
    pass


class NotChainTransitive(AnalysisError):
    pass


class ScheduleExhausted(AnalysisError):
    pass


class NoDisjointCycles(AnalysisError):
    pass


class HorizonMismatch(AnalysisError):
    pass


class NotMinimal(AnalysisError):
    pass


class DefectExceeded(AnalysisError):
    pass
