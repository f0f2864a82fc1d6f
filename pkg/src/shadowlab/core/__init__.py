"""Runtime helpers shared by the analyses."""

from shadowlab.core.trials import TrialPool, TrialRecord, run_trials

__all__ = ["TrialPool", "TrialRecord", "run_trials"]
