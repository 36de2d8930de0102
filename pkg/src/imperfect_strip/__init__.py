"""Wiener-Hopf analysis of a bi-material strip with an imperfect interface.

Modules
-------
kernel
    Kernel ``Xi``, its regularized form ``Xi*`` and the parameter maps.
factorize
    Plus/minus factors of ``Xi*`` from a Cauchy integral.
constants
    Asymptotic constants, ``gamma_+`` and the junction conditions.
field
    Weight-function field from its transforms; near-tip and far-field checks.
cli
    Command line front end (constants, factorize, sweep, field, verify).
"""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError, QuadratureError, StripError
from .kernel import DimensionlessParams, StripConfig, dimensionalize, nondimensionalize
from .settings import FactorizationSettings, FieldSettings

__all__ = [
    "__version__",
    "StripConfig",
    "DimensionlessParams",
    "FactorizationSettings",
    "FieldSettings",
    "dimensionalize",
    "nondimensionalize",
    "StripError",
    "DomainError",
    "ConfigError",
    "QuadratureError",
]
