"""Wiener-Hopf kernel of the bi-material strip with an imperfect interface.

The strip consists of an upper layer (shear modulus ``mu1``, thickness
``h1``) and a lower layer (``mu2``, ``h2``) joined along ``Y = 0`` by a
spring-type interface with compliance ``kappa``.  This module evaluates

* the kernel ``Xi(xi) = (coth(xi h1)/mu1 + coth(xi h2)/mu2 + kappa xi)/xi``,
* the regularized factor ``Xi*(xi)`` defined by
  ``Xi = kappa (lam + i xi)(lam - i xi) Xi* / xi**2``,
* the dimensionless kernel ``Xi**(t)`` written in terms of the contrasts
  ``H*``, ``mu*`` and the dimensionless compliance ``kappa*``,

together with the configuration types and the maps between physical and
dimensionless parameters.

Everything is written in terms of ``xcm1(z) = z coth(z) - 1``.  That single
helper carries the removable singularity at the origin (series) and the
overflow at large ``|Re z|`` (exponentially scaled form), so the public
functions never form ``coth`` of a large argument or divide ``0/0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "StripConfig",
    "DimensionlessParams",
    "KernelParams",
    "coth",
    "xcm1",
    "log1p_complex",
    "kernel_params",
    "eval_kernel",
    "eval_kernel_regularized",
    "eval_xi_star",
    "xi_star_minus_one",
    "log_xi_star",
    "eval_xi_star_star",
    "log_xi_star_star",
    "log_xi_star_limit",
    "nondimensionalize",
    "dimensionalize",
    "lambda_star_closed_form",
    "require_imperfect",
]

# Below this modulus xcm1 switches to its Taylor series.  Six terms give a
# truncation error of about |z|**14 / 10**6, far below double precision.
_XCM1_SERIES_RADIUS = 0.2
# Taylor coefficients of z coth z - 1 in powers of z**2, starting at z**2.
_XCM1_COEFFS = (1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0,
                2.0 / 93555.0, -1382.0 / 638512875.0)


def _finite_positive(name, value, allow_zero=False):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise DomainError(f"{name} must be {bound}, got {value!r}")
    return value


@dataclass(frozen=True)
class StripConfig:
    """Physical description of the two-layer strip.

    Parameters
    ----------
    mu1, mu2 : float
        Shear moduli of the upper and lower layers (Pa).
    h1, h2 : float
        Layer thicknesses (m).
    kappa : float
        Interface compliance (m/Pa).  ``kappa = 0`` describes a perfect
        interface; it can be stored (the perfect-interface constants need
        the geometry) but every imperfect-interface routine rejects it via
        :func:`require_imperfect`.
    """

    mu1: float
    mu2: float
    h1: float
    h2: float
    kappa: float

    def __post_init__(self):
        for name in ("mu1", "mu2", "h1", "h2"):
            object.__setattr__(self, name, _finite_positive(name, getattr(self, name)))
        object.__setattr__(self, "kappa",
                           _finite_positive("kappa", self.kappa, allow_zero=True))

    @property
    def h_total(self) -> float:
        """Total thickness ``H = h1 + h2``."""
        return self.h1 + self.h2

    @property
    def mu_total(self) -> float:
        """Modulus sum ``mu1 + mu2`` used to scale ``kappa``."""
        return self.mu1 + self.mu2

    @property
    def is_perfect(self) -> bool:
        return self.kappa == 0.0

    def swapped(self) -> "StripConfig":
        """The same strip with the two layers relabelled."""
        return StripConfig(self.mu2, self.mu1, self.h2, self.h1, self.kappa)

    def to_dict(self) -> dict:
        return {"mu1": self.mu1, "mu2": self.mu2, "h1": self.h1,
                "h2": self.h2, "kappa": self.kappa}


def lambda_star_closed_form(mu_star, h_star, kappa_star):
    """Dimensionless factorization scale ``lam* = lam H``.

    ``lam*^2 = 8 (1 + mu* H*) / (kappa* (1 - mu*^2)(1 - H*^2))``; returns
    ``inf`` for a perfect interface (``kappa* = 0``).
    """
    if kappa_star == 0:
        return math.inf
    num = 8.0 * (1.0 + mu_star * h_star)
    den = kappa_star * (1.0 - mu_star * mu_star) * (1.0 - h_star * h_star)
    return math.sqrt(num / den)


@dataclass(frozen=True)
class DimensionlessParams:
    """Contrast form of a strip configuration.

    Attributes
    ----------
    h_star : float
        Thickness contrast ``(h1 - h2)/(h1 + h2)``, strictly inside (-1, 1).
    mu_star : float
        Stiffness contrast ``(mu1 - mu2)/(mu1 + mu2)``, strictly inside (-1, 1).
    kappa_star : float
        ``kappa (mu1 + mu2) / H``; zero only for the perfect interface.
    h_total : float
        Total thickness ``H`` (m).  Purely a length scale; every
        dimensionless output is independent of it.
    lambda_star : float
        ``lam H`` from the closed form, filled in on construction.
    """

    h_star: float
    mu_star: float
    kappa_star: float
    h_total: float = 1.0
    lambda_star: float = field(init=False)

    def __post_init__(self):
        for name in ("h_star", "mu_star"):
            v = float(getattr(self, name))
            if not (-1.0 < v < 1.0):
                raise DomainError(
                    f"{name} = {v!r} is a degenerate contrast; it must lie strictly inside (-1, 1)")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "kappa_star",
                           _finite_positive("kappa_star", self.kappa_star, allow_zero=True))
        object.__setattr__(self, "h_total", _finite_positive("h_total", self.h_total))
        object.__setattr__(self, "lambda_star",
                           lambda_star_closed_form(self.mu_star, self.h_star, self.kappa_star))

    @property
    def a(self) -> float:
        """Upper layer fraction ``h1/H = (1 + H*)/2``."""
        return 0.5 * (1.0 + self.h_star)

    @property
    def b(self) -> float:
        """Lower layer fraction ``h2/H = (1 - H*)/2``."""
        return 0.5 * (1.0 - self.h_star)

    def swapped(self) -> "DimensionlessParams":
        return DimensionlessParams(-self.h_star, -self.mu_star, self.kappa_star, self.h_total)


@dataclass(frozen=True)
class KernelParams:
    """Scalars derived directly from a :class:`StripConfig`.

    Attributes
    ----------
    eta : float
        ``1/(mu1 h1) + 1/(mu2 h2)``, the coefficient of ``xi**-2`` in
        ``Xi`` near the origin (1/(Pa m^2)).
    lam : float
        ``sqrt((mu1 h1 + mu2 h2)/(mu1 mu2 h1 h2 kappa))`` (1/m).  Note that
        ``lam**2 = eta/kappa``.
    """

    eta: float
    lam: float


def require_imperfect(cfg: StripConfig) -> None:
    """Raise :class:`DomainError` unless ``cfg.kappa > 0``."""
    if cfg.kappa <= 0:
        raise DomainError(
            "kappa = 0 (perfect interface) is a singular limit of the imperfect-interface "
            "problem; use the perfect-interface routines (alpha_perfect, gamma_plus) instead")


def kernel_params(cfg: StripConfig) -> KernelParams:
    require_imperfect(cfg)
    eta = 1.0 / (cfg.mu1 * cfg.h1) + 1.0 / (cfg.mu2 * cfg.h2)
    lam = math.sqrt((cfg.mu1 * cfg.h1 + cfg.mu2 * cfg.h2)
                    / (cfg.mu1 * cfg.mu2 * cfg.h1 * cfg.h2 * cfg.kappa))
    return KernelParams(eta=eta, lam=lam)


def nondimensionalize(cfg: StripConfig) -> DimensionlessParams:
    """Map physical parameters to ``(H*, mu*, kappa*, H)``."""
    H = cfg.h_total
    return DimensionlessParams(
        h_star=(cfg.h1 - cfg.h2) / H,
        mu_star=(cfg.mu1 - cfg.mu2) / cfg.mu_total,
        kappa_star=cfg.kappa * cfg.mu_total / H,
        h_total=H,
    )


def dimensionalize(dp: DimensionlessParams, h_total=None, mu_total=1.0) -> StripConfig:
    """Inverse of :func:`nondimensionalize`.

    Parameters
    ----------
    dp : DimensionlessParams
    h_total : float, optional
        Total thickness; defaults to ``dp.h_total``.
    mu_total : float
        ``mu1 + mu2`` (Pa).  The contrasts do not fix the absolute modulus.
    """
    H = dp.h_total if h_total is None else _finite_positive("h_total", h_total)
    M = _finite_positive("mu_total", mu_total)
    return StripConfig(
        mu1=0.5 * M * (1.0 + dp.mu_star),
        mu2=0.5 * M * (1.0 - dp.mu_star),
        h1=0.5 * H * (1.0 + dp.h_star),
        h2=0.5 * H * (1.0 - dp.h_star),
        kappa=dp.kappa_star * H / M,
    )


# ---------------------------------------------------------------------------
# elementary functions


def _as_array(z):
    z = np.asarray(z)
    if z.dtype.kind not in "fc":
        z = z.astype(float)
    return z


def _ret(out, like):
    return out[()] if np.ndim(like) == 0 else out


def xcm1(z):
    """Return ``z coth(z) - 1`` for real or complex ``z``.

    The function is even and entire apart from the poles at ``z = i k pi``
    (``k != 0``).  Small arguments use the Taylor series; elsewhere the
    form ``w (1 + e)/(1 - e) - 1`` with ``w = z sign(Re z)`` and
    ``e = exp(-2 w)`` is used, which never overflows.
    """
    z = _as_array(z)
    out = np.empty(z.shape, dtype=z.dtype)
    small = np.abs(z) < _XCM1_SERIES_RADIUS
    if np.any(small):
        z2 = z[small] ** 2
        acc = np.zeros_like(z2)
        for c in reversed(_XCM1_COEFFS):
            acc = (acc + c) * z2
        out[small] = acc
    big = ~small
    if np.any(big):
        zb = z[big]
        w = np.where(zb.real >= 0, zb, -zb)
        e = np.exp(-2.0 * w)
        with np.errstate(divide="ignore", invalid="ignore"):
            out[big] = w * (1.0 + e) / (1.0 - e) - 1.0
    return _ret(out, z)


def coth(z):
    """Overflow-free hyperbolic cotangent; raises at its poles."""
    z = _as_array(z)
    w = np.where(z.real >= 0, z, -z)
    e = np.exp(-2.0 * w)
    if np.any(e == 1.0):
        raise DomainError("coth evaluated at a pole (z = i k pi)")
    out = np.where(z.real >= 0, 1.0, -1.0) * (1.0 + e) / (1.0 - e)
    return _ret(out, z)


def log1p_complex(z):
    """``log(1 + z)`` accurate for small complex ``z``.

    numpy's ``log1p`` loses the relative accuracy of small complex
    arguments; the classical ``log(u) z/(u - 1)`` correction with
    ``u = 1 + z`` restores it.  Real input goes straight to ``np.log1p``.
    """
    z = _as_array(z)
    if z.dtype.kind == "f":
        return _ret(np.log1p(z), z)
    u = 1.0 + z
    d = u - 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(d == 0, z, np.log(u) * z / np.where(d == 0, 1.0, d))
    return _ret(out, z)


# ---------------------------------------------------------------------------
# kernels


def eval_kernel(xi, cfg: StripConfig):
    """Evaluate ``Xi(xi) = (coth(xi h1)/mu1 + coth(xi h2)/mu2 + kappa xi)/xi``.

    The double pole at ``xi = 0`` is not removed here; see
    :func:`eval_kernel_regularized` for ``xi**2 Xi(xi)``.  Works for any
    ``kappa >= 0`` because the perfect-interface kernel is useful for
    diagnostics too.

    Raises
    ------
    DomainError
        At ``xi = 0`` or at a pole of ``coth(xi h_j)``.
    """
    xi = _as_array(xi)
    if np.any(xi == 0):
        raise DomainError("the kernel has a double pole at xi = 0")
    val = (coth(xi * cfg.h1) / cfg.mu1 + coth(xi * cfg.h2) / cfg.mu2) / xi + cfg.kappa
    return _ret(np.asarray(val), xi)


def eval_kernel_regularized(xi, cfg: StripConfig):
    """Return ``xi**2 Xi(xi)``, extended continuously (value ``eta``) to 0."""
    xi = _as_array(xi)
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    val = ((1.0 + xcm1(xi * cfg.h1)) / a + (1.0 + xcm1(xi * cfg.h2)) / b
           + cfg.kappa * xi * xi)
    return _ret(np.asarray(val), xi)


def xi_star_minus_one(xi, cfg: StripConfig, params: KernelParams | None = None):
    """Return ``Xi*(xi) - 1`` without cancellation.

    Uses ``Xi* - 1 = (mu1 xcm1(xi h2)/h2 + mu2 xcm1(xi h1)/h1) /
    (mu1 mu2 kappa (lam^2 + xi^2))``, which follows from ``eta = kappa lam^2``.
    """
    p = kernel_params(cfg) if params is None else params
    xi = _as_array(xi)
    den = cfg.mu1 * cfg.mu2 * cfg.kappa * (p.lam * p.lam + xi * xi)
    if np.any(den == 0):
        raise DomainError("Xi* has poles at xi = +/- i lam")
    num = cfg.mu1 * xcm1(xi * cfg.h2) / cfg.h2 + cfg.mu2 * xcm1(xi * cfg.h1) / cfg.h1
    return _ret(np.asarray(num / den), xi)


def eval_xi_star(xi, cfg: StripConfig, params: KernelParams | None = None):
    """Evaluate the regularized kernel ``Xi*(xi)``.

    ``Xi*`` is even, real and positive on the real axis, tends to 1 at the
    origin and at infinity, and has poles at ``xi = +/- i lam`` and at the
    poles of ``coth(xi h_j)``.  No strip check is made here.
    """
    return 1.0 + xi_star_minus_one(xi, cfg, params)


def log_xi_star(xi, cfg: StripConfig, params: KernelParams | None = None):
    """``ln Xi*(xi)``, accurate near the origin where it behaves like ``xi**2``."""
    return log1p_complex(xi_star_minus_one(xi, cfg, params))


def _xi_ss_minus_one(t, dp: DimensionlessParams):
    if dp.kappa_star <= 0:
        raise DomainError("Xi** requires kappa* > 0")
    t = _as_array(t)
    a, b = dp.a, dp.b
    A = 2.0 / (dp.kappa_star * (1.0 + dp.mu_star))
    B = 2.0 / (dp.kappa_star * (1.0 - dp.mu_star))
    num = A * xcm1(t * a) / a + B * xcm1(t * b) / b
    return num / (dp.lambda_star ** 2 + t * t)


def eval_xi_star_star(t, dp: DimensionlessParams):
    """Dimensionless kernel ``Xi**(t)``, equal to ``Xi*(t/H)``.

    Written with ``a = (1 + H*)/2``, ``b = (1 - H*)/2``:
    ``Xi** = 1 + (A xcm1(a t)/a + B xcm1(b t)/b)/(lam*^2 + t^2)`` where
    ``A = 2/(kappa*(1 + mu*))`` and ``B = 2/(kappa*(1 - mu*))``.
    """
    t = _as_array(t)
    return _ret(1.0 + _xi_ss_minus_one(t, dp), t)


def log_xi_star_star(t, dp: DimensionlessParams):
    t = _as_array(t)
    return _ret(log1p_complex(_xi_ss_minus_one(t, dp)), t)


def log_xi_star_limit(dp: DimensionlessParams) -> float:
    """Limit of ``ln Xi**(t)/t**2`` as ``t -> 0``.

    Equals ``(H*^3 mu* - H*^2 - mu* H* + 1) / (12 (1 + mu* H*))``; it does
    not depend on ``kappa*``.
    """
    h, m = dp.h_star, dp.mu_star
    return (h ** 3 * m - h * h - m * h + 1.0) / (12.0 * (1.0 + m * h))
