"""Exception types shared by the imperfect_strip modules."""


class StripError(Exception):
    """Base class for all package errors."""


class DomainError(StripError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ConfigError(StripError, ValueError):
    """A run configuration failed validation.

    Parameters
    ----------
    message : str
        Human readable description.
    field : str, optional
        Dotted path of the offending config entry.
    """

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class QuadratureError(StripError, ArithmeticError):
    """Adaptive quadrature or root finding did not reach its target.

    The ``detail`` attribute carries whatever diagnostic the failing
    routine could provide (worst subinterval, sampled sign pattern, ...).
    """

    def __init__(self, message, detail=None):
        self.detail = detail
        if detail is not None:
            message = f"{message} ({detail})"
        super().__init__(message)
