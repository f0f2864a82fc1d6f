"""Pseudo-orbits, exact shadowing on SFTs and the average-shadowing construction."""

from shadowlab.shadowing.average import (
    AverageShadowTrace,
    StageRecord,
    Subsequence,
    ToleranceSchedule,
    alternating_block_sequence,
    average_shadow_trace,
    density_one_subsequence,
)
from shadowlab.shadowing.classes import (
    ClassLabeling,
    class_labeling,
    same_class,
    transition_graph,
)
from shadowlab.shadowing.pseudo_orbit import (
    PseudoOrbit,
    SeedLike,
    average_defect_curve,
    delta_exponent,
    is_along_D,
    random_pseudo_orbit,
    resolution_depth,
    step_defects,
)
from shadowlab.shadowing.sft import (
    ClassVerdict,
    DSPReport,
    ShadowResult,
    ShadowVerification,
    dsp_check,
    sft_shadow,
    tracking_errors,
    verify_shadowing,
)

__all__ = [
    "AverageShadowTrace",
    "ClassLabeling",
    "ClassVerdict",
    "DSPReport",
    "PseudoOrbit",
    "SeedLike",
    "ShadowResult",
    "ShadowVerification",
    "StageRecord",
    "Subsequence",
    "ToleranceSchedule",
    "alternating_block_sequence",
    "average_defect_curve",
    "average_shadow_trace",
    "class_labeling",
    "delta_exponent",
    "density_one_subsequence",
    "dsp_check",
    "is_along_D",
    "random_pseudo_orbit",
    "resolution_depth",
    "same_class",
    "sft_shadow",
    "step_defects",
    "tracking_errors",
    "transition_graph",
    "verify_shadowing",
]
