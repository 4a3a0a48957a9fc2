"""Higher-order intensity correlations of thermal sources at magic detector positions."""

from ._core import (
    CapacityExceeded,
    TruncationError,
    ZeroProbabilityEvent,
    correlation_pathsum,
    correlation_permanent,
    crossover_threshold,
    enumerate_partitions,
    fit_cosine,
    magic_positions,
    moving_magic_positions,
    multiset_phase_sum,
    noon_overlap,
    phase_from_angle,
    project_magic_support_violation,
    setup1_g,
    setup1_visibility,
    setup2_coeffs,
    setup2_g,
    setup2_visibility,
    simulate_curve,
    verify_isomorphism,
)

__all__ = [
    "CapacityExceeded",
    "TruncationError",
    "ZeroProbabilityEvent",
    "correlation_pathsum",
    "correlation_permanent",
    "crossover_threshold",
    "enumerate_partitions",
    "fit_cosine",
    "magic_positions",
    "moving_magic_positions",
    "multiset_phase_sum",
    "noon_overlap",
    "phase_from_angle",
    "project_magic_support_violation",
    "setup1_g",
    "setup1_visibility",
    "setup2_coeffs",
    "setup2_g",
    "setup2_visibility",
    "simulate_curve",
    "verify_isomorphism",
]
