"""The Euclidean algebra R_n: arithmetic, zero divisors, Haar measure and analytic probes."""

from .core import (
    AlgebraContext,
    Element,
    add,
    algebra_norm,
    det_lu,
    euclidean_distance,
    generator_power,
    multiply_naive,
    negate,
    poly_eval,
    power,
    scale,
    sigma,
    sigma_inverse,
)
from .errors import (
    AlgebraError,
    AllSamplesClipped,
    DimensionMismatch,
    EvaluationFailure,
    EvenDimension,
    NotAZeroDivisor,
    NotConjugateSymmetric,
    NotNegacyclic,
    NumericFailure,
    OddDimension,
    ZeroDivisor,
)
from .spectral import (
    Spectrum,
    det_via_spectrum,
    inverse_spectrum,
    inverse_via_spectrum,
    multiply_fast,
    spectrum,
)
from .zero_divisors import (
    ZeroDivisorReport,
    estimate_zero_divisor_measure,
    inverse_cayley_hamilton,
    is_zero_divisor,
    r4_det_closed_form,
    r4_zero_divisor_point,
    square_roots_of_pm1_r4,
    star_shape_check,
)

__version__ = "0.1.0"
