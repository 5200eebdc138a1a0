"""Sparse Wirtinger flow phase retrieval.

Thin Python surface over the C++ core: signal and measurement generators,
support recovery, truncated spectral initialization, the thresholded
gradient-descent solver, and the error metrics used by the benchmarks.
"""

from swf._core import (
    InitResult,
    IterRecord,
    MeasurementEnsemble,
    SignalVector,
    SolveResult,
    StepSchedule,
    SupportScores,
    SwfConfig,
    __version__,
    assemble_initial,
    build_truncated_matrix,
    classify_success,
    dist,
    gradient,
    hard_threshold,
    kept_fraction,
    measure,
    nmse,
    objective,
    phi_squared,
    power_method,
    sample_flat_sparse_signal,
    sample_measurement_vectors,
    sample_sparse_signal,
    sigma_for_snr,
    spectral_initialize,
    step_size,
    support_scores,
    swf_iterate,
    swf_solve,
    top_k_indices,
    wf_solve_baseline,
)

__all__ = [
    "InitResult",
    "IterRecord",
    "MeasurementEnsemble",
    "SignalVector",
    "SolveResult",
    "StepSchedule",
    "SupportScores",
    "SwfConfig",
    "__version__",
    "assemble_initial",
    "build_truncated_matrix",
    "classify_success",
    "dist",
    "gradient",
    "hard_threshold",
    "kept_fraction",
    "measure",
    "nmse",
    "objective",
    "phi_squared",
    "power_method",
    "sample_flat_sparse_signal",
    "sample_measurement_vectors",
    "sample_sparse_signal",
    "sigma_for_snr",
    "spectral_initialize",
    "step_size",
    "support_scores",
    "swf_iterate",
    "swf_solve",
    "top_k_indices",
    "wf_solve_baseline",
]
