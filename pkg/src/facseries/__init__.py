"""Summation of divergent (inverse) power series via convergent factorial series.

Exact Stirling-number coefficient transforms, Levin/Weniger sequence
transformations and Pade approximants for comparison, three numerical
evaluation back-ends, and the two worked case studies (exponential integral,
quartic anharmonic oscillator).
"""

from .acceleration import TransformInput, levin, remainder_estimates, transform_table, weniger_s
from .applications import (
    E1Series,
    OscillatorSeries,
    asymptotics_check,
    e1_factorial_coeffs,
    e1_inverse_power_coeffs,
    e1_reference,
    oscillator_coeffs,
    oscillator_energy,
)
from .errors import (
    DegeneracyError,
    DomainError,
    EstimateError,
    FacseriesError,
    InstabilityError,
    IntegrationError,
    IntegrityError,
    PoleError,
    PoleInDomainError,
)
from .evaluate import (
    QuadratureSpec,
    SummationReport,
    euler_integral_eval,
    eval_power_as_factorial,
    quadrature_01,
    sum_factorial_series,
)
from .pade import PadeApprox, pade_construct, pade_eval
from .series import (
    FormalSeries,
    MomentSequence,
    PrecisionContext,
    SeriesKind,
    factorial_term,
    forward_difference_term,
    pochhammer,
    term_decay_estimate,
)
from .stirling import StirlingCache, orthogonality_defect, pochhammer_coeffs, stirling1, stirling2
from .transforms import (
    TransformMatrix,
    coefficient_transform,
    factorial_to_inverse_power,
    inverse_power_to_factorial,
    moments_to_factorial,
    power_to_factorial_coeffs,
    triangular_forward,
    triangular_inverse_apply,
)

__version__ = "0.1.0"
