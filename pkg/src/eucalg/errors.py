"""Exception types raised by the algebra routines."""


class AlgebraError(Exception):
    """Base class for every error raised by :mod:`eucalg`."""


class DimensionMismatch(AlgebraError, ValueError):
    pass


class NotNegacyclic(AlgebraError, ValueError):
    pass


class ZeroDivisor(AlgebraError, ZeroDivisionError):
    """The element lies on (or numerically next to) the zero-divisor set."""


class NotAZeroDivisor(AlgebraError, ValueError):
    pass


class NumericFailure(AlgebraError, ArithmeticError):
    """Base for failures of a numeric procedure rather than of its input."""


class NotConjugateSymmetric(NumericFailure):
    pass


class AllSamplesClipped(NumericFailure):
    pass


class EvaluationFailure(NumericFailure):
    pass


class OddDimension(AlgebraError, ValueError):
    pass


class EvenDimension(AlgebraError, ValueError):
    pass
