"""Spherical functions, definiteness checks and Levy-Khinchin representations
on the space of finite complex matrices under ``U(n) x U(n)``."""

from .errors import DomainError, IllPosedError, ModelViolationError, NumericError
from .omega import (
    ZERO,
    OmegaParam,
    canonicalize,
    l_functional,
    omega_norm,
    power_sum,
    sigma_moment,
    truncation_error_bound,
)
from .polya import (
    log_polya,
    one_minus_polya_bound,
    polya_eval,
    polya_log_deriv_closed,
    polya_log_deriv_series,
    polya_second_deriv_at_zero,
)
from .spherical import (
    MatrixPoint,
    SingularSpectrum,
    hs_norm,
    log_spherical,
    remainder,
    remainder_bound,
    singular_values,
    small_omega_linear_bound,
    spherical_eval,
    trace_square,
)
from .definiteness import (
    GramReport,
    gram_matrix,
    negative_type_check,
    positive_type_check,
    sample_points,
    schoenberg_check,
)
from .levy import (
    DiscreteOmegaMeasure,
    LevyTriple,
    MeasureRecovery,
    bochner_forward,
    bochner_kernel,
    default_probes,
    integrability_functional,
    lk_forward,
    lk_kernel,
    recover_A,
    recover_measure,
)
from .haar import (
    McEstimate,
    conjugate_translate,
    haar_unitary,
    multiplicativity_estimate,
    multiplicativity_ladder,
)

__version__ = "0.1.0"
