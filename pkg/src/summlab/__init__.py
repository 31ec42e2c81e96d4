"""Matrix summability of Fourier series: means, row conditions, kernel bounds and rates."""

from .conditions import (
    ConditionId,
    ConditionReport,
    beta_head_constant,
    beta_rest_constant,
    check_monotone,
    check_row_stochastic,
    hbvs_constant,
    implication_audit,
    rbvs_constant,
)
from .errors import DegenerateError, DomainError, OutOfRangeError, PreconditionError
from .experiments import (
    ExperimentReport,
    KernelBoundReport,
    corollary43_table,
    exemplar,
    exemplar_functions,
    lemma8_check,
    lemma9_head_check,
    lemma9_rest_check,
    run_experiment,
    theorem_bound,
)
from .fourier_core import (
    PeriodicFunction,
    TrigSeries,
    dirichlet_kernel,
    fourier_coefficients,
    partial_sum,
    psi,
)
from .moduli import (
    MediateFunction,
    ModulusProfile,
    canonical_mediate,
    check_condition_13,
    check_condition_14,
    lemma6_ratio,
    lemma7_ratio,
    modulus_of_continuity,
)
from .summability import (
    SummabilityMatrix,
    WeightSequence,
    cesaro_matrix,
    cumulative_weights,
    kernel,
    norlund_matrix,
    riesz_matrix,
    sup_error,
    transform,
)

__version__ = "0.1.0"
