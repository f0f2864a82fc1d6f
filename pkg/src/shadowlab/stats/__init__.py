"""Statistical chaos detectors at a finite horizon."""

from shadowlab.stats.density import (
    DensityEstimate,
    prefix_averages,
    tail_extremes,
    upper_lower_density,
    window_start,
)
from shadowlab.stats.distributional import (
    DistributionalFunctions,
    dc2_verdict,
    distributional_functions,
    pairwise_distances,
)
from shadowlab.stats.irregular import (
    IrregularityReport,
    IrregularWitness,
    NearIrregularPoint,
    TentMapExperiment,
    birkhoff_irregularity,
    first_symbol_observable,
    irregular_point_near,
    irregular_witness_sft,
    shortest_cycles,
    tent_map_experiment,
)
from shadowlab.stats.measures import (
    EmpiricalMeasure,
    empirical_measure,
    invariant_supports_finite,
    measure_center_finite,
    recurrent_points_finite,
    uniform_recurrence_gap,
)
from shadowlab.stats.omega import (
    OmegaBarEstimate,
    PowerIdentityCheck,
    omega_bar_estimate,
    omega_bar_exact_finite,
    omega_bar_power_identity_check,
    omega_estimate,
)
from shadowlab.stats.scrambled import (
    PairRecord,
    ScrambledWitness,
    is_periodic_point,
    periodic_visits,
    scrambled_family_check,
)

__all__ = [
    "DensityEstimate",
    "DistributionalFunctions",
    "EmpiricalMeasure",
    "IrregularWitness",
    "IrregularityReport",
    "NearIrregularPoint",
    "OmegaBarEstimate",
    "PairRecord",
    "PowerIdentityCheck",
    "ScrambledWitness",
    "TentMapExperiment",
    "birkhoff_irregularity",
    "dc2_verdict",
    "distributional_functions",
    "empirical_measure",
    "first_symbol_observable",
    "invariant_supports_finite",
    "irregular_point_near",
    "irregular_witness_sft",
    "is_periodic_point",
    "measure_center_finite",
    "omega_bar_estimate",
    "omega_bar_exact_finite",
    "omega_bar_power_identity_check",
    "omega_estimate",
    "pairwise_distances",
    "periodic_visits",
    "prefix_averages",
    "recurrent_points_finite",
    "scrambled_family_check",
    "shortest_cycles",
    "tail_extremes",
    "tent_map_experiment",
    "uniform_recurrence_gap",
    "upper_lower_density",
    "window_start",
]
