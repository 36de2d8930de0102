"""Numerical settings shared by the factorization, constants and field code."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

from .errors import DomainError


@dataclass(frozen=True)
class FactorizationSettings:
    """Controls for the Cauchy integral defining the factors of ``Xi*``.

    Attributes
    ----------
    beta : float
        Downward shift (1/m) of the integration line ``Im t = -beta``.  Zero
        means the real axis, with principal value plus half residue for
        points on it.  A positive shift extends the plus factor below the
        real axis, down to ``Im xi > -beta``.
    tail_cutoff : float
        Truncation point of the integrals in units of ``max(1, lam*, s*)/H``
        where ``s* = 4/(kappa* (1 - mu*^2))`` is the scale of the ``1/t``
        decay of ``ln Xi*``.  Must be at least 10.
    quad_tol : float
        Relative tolerance handed to the adaptive quadrature.
    tail_correction : bool
        Add the closed-form contribution of ``|t| > T`` built from the large
        ``t`` expansion of ``ln Xi*``.  Switching it off truncates bluntly.
    max_subdivisions : int
        Panel budget of the adaptive quadrature.
    """

    beta: float = 0.0
    tail_cutoff: float = 200.0
    quad_tol: float = 1e-9
    tail_correction: bool = True
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise DomainError(f"beta must be finite and >= 0, got {self.beta!r}")
        if not self.tail_cutoff >= 10:
            raise DomainError(f"tail_cutoff must be >= 10, got {self.tail_cutoff!r}")
        if not (0 < self.quad_tol < 1e-2):
            raise DomainError(f"quad_tol must lie in (0, 1e-2), got {self.quad_tol!r}")

    def replace(self, **kw) -> "FactorizationSettings":
        d = asdict(self)
        d.update(kw)
        return FactorizationSettings(**d)


@dataclass(frozen=True)
class FieldSettings:
    """Controls for the inverse Fourier integrals of the field module.

    Attributes
    ----------
    nodes_per_panel : int
        Gauss-Legendre order of each panel; an embedded rule of half the
        order provides the error estimate.
    contour_offset : float or None
        Fixed ``beta0`` (1/m) for the line ``Im xi = -beta0``.  ``None``
        picks it per group of points from ``gamma_plus`` and the extent of
        the requested ``X`` values.
    r_min : float or None
        Radius of the excluded disc around the tip; ``None`` means
        ``1e-3 min(h1, h2)``.
    decay_digits : float
        For ``Y != 0`` the integral is cut where ``exp(-|xi||Y|)`` has
        dropped by this many e-foldings.
    cutoff_scale : float
        On ``Y = 0`` the truncation is ``cutoff_scale max(1, lam*, s*)/H``;
        the algebraic tail beyond it is added in closed form.
    panel_budget : int
        Upper bound on the number of oscillation-limited panels.  The cutoff
        is lowered to ``4 panel_budget/max|X|`` when needed; the neglected
        remainder is then of order ``|F(S)|/|X|`` because the integrand
        oscillates, and is reflected in the error estimate only partially.
    """

    nodes_per_panel: int = 16
    contour_offset: float | None = None
    r_min: float | None = None
    decay_digits: float = 38.0
    cutoff_scale: float = 400.0
    panel_budget: int = 4000

    def __post_init__(self):
        if self.nodes_per_panel < 4 or self.nodes_per_panel % 2:
            raise DomainError("nodes_per_panel must be an even integer >= 4")
        if self.contour_offset is not None and not self.contour_offset > 0:
            raise DomainError("contour_offset must be positive")
        if self.r_min is not None and not self.r_min > 0:
            raise DomainError("r_min must be positive")
        if not (self.decay_digits > 0 and self.cutoff_scale > 0 and self.panel_budget >= 10):
            raise DomainError("decay_digits, cutoff_scale must be positive, panel_budget >= 10")

    def replace(self, **kw) -> "FieldSettings":
        d = asdict(self)
        d.update(kw)
        return FieldSettings(**d)
