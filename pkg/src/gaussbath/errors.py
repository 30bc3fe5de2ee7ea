"""Exception types shared across the package."""


class GaussBathError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(GaussBathError):
    """A linear system has no usable pivot (non-invertible within tolerance)."""


class InvalidParams(GaussBathError, ValueError):
    """A parameter violates its documented domain (negative occupation, dt <= 0, ...)."""


class NonPhysical(GaussBathError):
    """A covariance matrix fails a physicality condition beyond numerical tolerance."""


class DomainError(GaussBathError, ValueError):
    """An entropy-function argument lies outside its domain beyond tolerance."""


class InvalidInput(GaussBathError, ValueError):
    """An operation was called with inputs that make it meaningless (e.g. a
    separable state handed to the sudden-death search)."""


class ThresholdInconsistency(GaussBathError):
    """A sweep row has discord above one but zero logarithmic negativity.

    This signals a convention bug (logarithm base or eigenvalue scaling),
    not a physics result.
    """
