"""Asymptotic constants of the weight function and the junction conditions.

The constants collected here describe the weight function far from and
close to the crack tip:

* ``C_j X + D_j`` is the linear growth of ``Y_j`` as ``X -> -inf`` with
  ``C_j = (-1)**(j+1)/(mu_j h_j)`` and ``D_j = -C_j (alpha/pi + 1/lam)``,
  where ``alpha`` is the integral of ``ln Xi*(t)/t**2`` over ``(0, inf)``;
* ``gamma_+`` (first zero of ``Xi`` below the real axis) and
  ``gamma_- = pi min(1/h_j)`` are the exponential rates at ``X -> +inf``
  and ``X -> -inf``;
* ``a0 = lam`` is the tip flux constant.

The dimensionless junction constant ``alpha_I`` and its perfect-interface
counterpart ``alpha_P`` are computed from the contrast parameters.  The
junction matrix and the first order junction formulas are exposed with
residual evaluators so that callers can check any candidate solution.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, asdict
from typing import NamedTuple

import numpy as np
from scipy import integrate, optimize
from scipy.special import xlogy

from .errors import DomainError, QuadratureError
from .kernel import (DimensionlessParams, StripConfig, kernel_params, log_xi_star,
                     log_xi_star_limit, log_xi_star_star, nondimensionalize,
                     require_imperfect)
from .settings import FactorizationSettings

logger = logging.getLogger(__name__)

__all__ = [
    "AsymptoticConstants",
    "JunctionCoefficients",
    "JunctionResult",
    "SingularLimits",
    "alpha_integral",
    "alpha_star_dimensionless",
    "gamma_plus",
    "gamma_plus_residual",
    "alpha_perfect",
    "alpha_imperfect",
    "compute_constants",
    "junction_coefficients",
    "junction_matrix",
    "junction_det_closed_form",
    "junction_apply",
    "zero_order_rhs",
    "first_order_rhs",
    "zero_order_residuals",
    "singular_limits",
    "decay_scale",
]


# ---------------------------------------------------------------------------
# the alpha integral


def decay_scale(dp: DimensionlessParams) -> float:
    """Dimensionless coefficient ``s*`` of the ``1/t`` decay of ``ln Xi**``.

    For large real ``t``, ``Xi** - 1 = (s* t - lam*^2)/(lam*^2 + t^2)`` up to
    exponentially small terms, with ``s* = 4/(kappa* (1 - mu*^2))``.
    """
    return 4.0 / (dp.kappa_star * (1.0 - dp.mu_star ** 2))


def _cutoff(dp: DimensionlessParams, settings: FactorizationSettings) -> float:
    """Dimensionless truncation point ``T H``."""
    lo = 1.0 - abs(dp.h_star)
    # the exponentially small terms must be negligible beyond T as well
    return max(settings.tail_cutoff * max(1.0, dp.lambda_star, decay_scale(dp)),
               40.0 / lo)


def _moment_integral(logfun, c0, scale, breaks, lam, s, T, settings, label):
    """Integrate ``logfun(t)/t**2`` over ``(0, inf)``.

    ``logfun`` behaves as ``c0 t**2`` at the origin and as
    ``s/t - (lam^2 + s^2/2)/t^2 + s^3/(3 t^3)`` at infinity.  The range
    ``(0, T)`` goes to QUADPACK with break points at the natural scales of
    the integrand; the rest is added in closed form.
    """
    def f(t):
        if t == 0.0:
            return c0
        return float(logfun(t)) / (t * t)

    pts = sorted({p for p in breaks if 0 < p < T})
    # add a geometric ladder so that no panel spans many decades
    edges = [0.0]
    x = 0.5 / scale
    while x < T:
        edges.append(x)
        x *= 8.0
    edges = sorted(set(edges) | set(pts) | {T})
    total, err = 0.0, 0.0
    worst = (0.0, None)
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, e, info = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-3 * settings.quad_tol,
                                      limit=settings.max_subdivisions, full_output=True)[:3]
        total += val
        err += e
        if e > worst[0]:
            worst = (e, (lo, hi))
    if settings.tail_correction:
        b = -(lam * lam + 0.5 * s * s)
        c = s ** 3 / 3.0
        total += s / (2 * T * T) + b / (3 * T ** 3) + c / (4 * T ** 4)
    if not err <= max(settings.quad_tol, 1e-8) * abs(total):
        raise QuadratureError(f"{label}: quadrature error estimate {err:.3g} too large",
                              detail=f"worst panel {worst[1]}")
    return total, err


def alpha_integral(cfg: StripConfig, settings: FactorizationSettings | None = None):
    """Return ``(alpha, alpha_star)``.

    ``alpha = int_0^inf ln Xi*(t)/t^2 dt`` is evaluated in physical units
    (result in m) and ``alpha_star = alpha/H``.  The integrand is continued
    to ``t = 0`` by its exact limit.
    """
    settings = settings or FactorizationSettings()
    p = kernel_params(cfg)
    dp = nondimensionalize(cfg)
    H = cfg.h_total
    c0 = log_xi_star_limit(dp) * H * H
    s = (cfg.mu1 + cfg.mu2) / (cfg.mu1 * cfg.mu2 * cfg.kappa)
    T = _cutoff(dp, settings) / H
    breaks = [1.0 / cfg.h1, 1.0 / cfg.h2, p.lam, s]
    alpha, _ = _moment_integral(lambda t: log_xi_star(t, cfg, p), c0, 1.0 / H, breaks,
                                p.lam, s, T, settings, "alpha_integral")
    return alpha, alpha / H


def alpha_star_dimensionless(dp: DimensionlessParams,
                             settings: FactorizationSettings | None = None) -> float:
    """``alpha* = int_0^inf ln Xi**(t)/t^2 dt`` from the contrast form."""
    settings = settings or FactorizationSettings()
    if dp.kappa_star <= 0:
        raise DomainError("alpha* needs kappa* > 0; use alpha_perfect for kappa* = 0")
    s = decay_scale(dp)
    T = _cutoff(dp, settings)
    breaks = [1.0 / dp.a, 1.0 / dp.b, dp.lambda_star, s]
    val, _ = _moment_integral(lambda t: log_xi_star_star(t, dp), log_xi_star_limit(dp), 1.0,
                              breaks, dp.lambda_star, s, T, settings, "alpha_star")
    return val


def alpha_imperfect(dp: DimensionlessParams,
                    settings: FactorizationSettings | None = None) -> float:
    """Dimensionless junction constant ``alpha_I = -(alpha*/pi + 1/lam*)``.

    Negative, like ``alpha_P``, and tends to ``alpha_P`` as ``kappa* -> 0``.
    """
    a_star = alpha_star_dimensionless(dp, settings)
    return -(a_star / math.pi + 1.0 / dp.lambda_star)


# ---------------------------------------------------------------------------
# gamma_+


def _cot(x):
    return math.cos(x) / math.sin(x)


def gamma_plus_residual(cfg: StripConfig, gamma: float) -> float:
    """Left side of the root equation, made dimensionless.

    ``(cot(g h1)/mu1 + cot(g h2)/mu2 - kappa g) * mu1 mu2/(mu1 + mu2)``.
    """
    f = _cot(gamma * cfg.h1) / cfg.mu1 + _cot(gamma * cfg.h2) / cfg.mu2 - cfg.kappa * gamma
    return f * cfg.mu1 * cfg.mu2 / cfg.mu_total


def gamma_plus(cfg: StripConfig) -> float:
    """First zero ``-i gamma_+`` of the kernel below the real axis.

    Solves ``cot(g h1)/mu1 + cot(g h2)/mu2 = kappa g`` on
    ``(0, pi/max(h1, h2))``.  On that interval the left side decreases
    strictly from ``+inf`` to ``-inf`` while the right side is
    nondecreasing, so the bracket always holds a single root whatever the
    size of ``kappa``; ``kappa = 0`` is allowed.

    Raises
    ------
    QuadratureError
        If the endpoint signs do not straddle zero (reports a sampled sign
        pattern); this indicates invalid floating point input.
    """
    hmax = max(cfg.h1, cfg.h2)
    top = math.pi / hmax
    lo, hi = top * 1e-12, top * (1.0 - 1e-12)
    f = lambda g: gamma_plus_residual(cfg, g)
    flo, fhi = f(lo), f(hi)
    if not (flo > 0 > fhi):
        grid = np.linspace(lo, hi, 17)
        pattern = "".join("+" if f(g) > 0 else "-" for g in grid)
        raise QuadratureError("gamma_plus root is not bracketed", detail=f"signs {pattern}")
    root, r = optimize.brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps,
                              maxiter=500, full_output=True)
    if not r.converged:
        raise QuadratureError("gamma_plus: brentq did not converge", detail=r.flag)
    return root


# ---------------------------------------------------------------------------
# alpha_P


def _alpha_p_integrand(t, h, m, form):
    if t < 0.05:
        # three-term Taylor series about t = 0 (removable singularity)
        q = h * (h * h - 1.0)
        d = 1.0 + m * h
        c0 = q / (3.0 * d)
        if form == "printed":
            c2 = -q * (17 * h ** 3 * m + 12 * h * h + 2 * h * m + 7) / (90.0 * d * d)
            return c0 + c2 * t * t
        c2 = -q * (2 * h ** 3 * m - 3 * h * h + 2 * h * m + 7) / (90.0 * d * d)
        c4 = q * (16 * h ** 6 * m * m - 45 * h ** 5 * m + 16 * h ** 4 * m * m + 9 * h ** 4
                  + 102 * h ** 3 * m + 16 * h * h * m * m - 54 * h * h + 39 * h * m + 93) \
            / (7560.0 * d ** 3)
        return c0 + t * t * (c2 + c4 * t * t)
    # everything scaled by 2 exp(-t) so nothing overflows
    u = math.exp(-2.0 * t)
    p = math.exp(-t * (1.0 - h))
    q_ = math.exp(-t * (1.0 + h))
    one_m_u = -math.expm1(-2.0 * t)
    coth_t = (1.0 + u) / one_m_u
    den = (one_m_u + m * (p - q_)) * t
    if form == "printed":
        tanh_th = math.tanh(t * h)
        # the numerator does not grow, so only the denominator is scaled
        return (h - tanh_th * coth_t) * 2.0 * math.exp(-t) / den
    # num = 2 e^{-t} [h cosh(t h) - sinh(t h) coth t]; pull out the factor h
    # so that a nearly symmetric strip does not cancel every digit
    x = t * h
    if abs(x) < 1.0:
        shc2 = 2.0 * math.exp(-t) * (math.sinh(x) / x if x != 0.0 else 1.0)
    else:
        shc2 = (p - q_) / x
    num = h * ((p + q_) - t * shc2 * coth_t)
    return num / den


def alpha_perfect(dp: DimensionlessParams, form: str = "corrected",
                  tol: float = 1e-12) -> float:
    """Junction constant ``alpha_P`` of the perfect interface.

    ``alpha_P = (1/pi)[a ln a + b ln b] - (mu*/pi) int_0^inf g(t) dt`` with
    ``a, b = (1 +/- H*)/2``.  With ``form="corrected"`` (default)

    ``g(t) = (H* cosh(t H*) - sinh(t H*) coth t) / ((sinh t + mu* sinh(t H*)) t)``,

    which is the ``kappa -> 0`` limit of ``alpha_I``.  ``form="printed"``
    uses ``(H* - tanh(t H*) coth t)`` in the numerator instead; that
    variant does not reproduce the limit of ``alpha_I`` away from
    ``mu* = 0`` and is kept only for comparison.  ``kappa*`` is ignored.
    """
    if form not in ("corrected", "printed"):
        raise ValueError(f"unknown alpha_P form {form!r}")
    h, m = dp.h_star, dp.mu_star
    a, b = dp.a, dp.b
    first = (xlogy(a, a) + xlogy(b, b)) / math.pi
    if m == 0.0:
        return float(first)
    g = lambda t: _alpha_p_integrand(t, h, m, form)
    # decay rate of the integrand is 1 - |H*| (corrected) or 1 (printed)
    rate = 1.0 if form == "printed" else 1.0 - abs(h)
    edges = [0.0, 0.05, 1.0] + [k / rate for k in (2.0, 5.0, 10.0, 20.0, 40.0)]
    edges = sorted(set(edges))
    val, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = integrate.quad(g, lo, hi, epsabs=0.0, epsrel=tol, limit=400)
        val += v
        err += e
    v, e = integrate.quad(g, edges[-1], np.inf, epsabs=1e-16, epsrel=tol, limit=400)
    val += v
    err += e
    if err > 1e-9 * max(abs(val), 1e-3):
        raise QuadratureError("alpha_perfect: quadrature error too large", detail=f"{err:.3g}")
    return float(first - m * val / math.pi)


# ---------------------------------------------------------------------------
# collected constants


@dataclass(frozen=True)
class AsymptoticConstants:
    """Every scalar constant of the weight function for one configuration.

    Attributes are in SI units except the dimensionless ``alpha_star``,
    ``alpha_I``, ``alpha_P`` and the contrast parameters.  ``c`` and ``d``
    are the pairs ``(C1, C2)``, ``(D1, D2)``.
    """

    eta: float
    lam: float
    alpha: float
    alpha_star: float
    c: tuple
    d: tuple
    a0: float
    gamma_plus: float
    gamma_minus: float
    alpha_I: float
    alpha_P: float
    h_total: float
    mu_star: float
    h_star: float
    kappa_star: float
    lambda_star: float

    @property
    def opening_to_jump(self) -> float:
        """``alpha/pi + 1/lam`` (m)."""
        return self.alpha / math.pi + 1.0 / self.lam

    def as_record(self) -> dict:
        """Flat key-value form used by the CLI."""
        rec = asdict(self)
        c, d = rec.pop("c"), rec.pop("d")
        rec["C1"], rec["C2"] = c
        rec["D1"], rec["D2"] = d
        rec["gamma_plus_H"] = self.gamma_plus * self.h_total
        return rec


@dataclass(frozen=True)
class JunctionCoefficients:
    """Coupling constants of the first order junction conditions.

    Attributes
    ----------
    opening_to_jump : float
        ``alpha/pi + 1/lam`` (m).
    weight2, weight3 : float
        ``mu2 h2/(mu1 h1 + mu2 h2)`` and ``mu1 h1/(mu1 h1 + mu2 h2)``.
    tip_amplitude_factor : float
        ``1/(kappa lam)``.
    alpha_I_normalized : float
        ``-(alpha/pi + 1/lam)/H``; the sign follows the dimensionless
        definition so that it equals ``AsymptoticConstants.alpha_I``.
    """

    opening_to_jump: float
    weight2: float
    weight3: float
    tip_amplitude_factor: float
    alpha_I_normalized: float


def compute_constants(cfg: StripConfig, settings: FactorizationSettings | None = None,
                      alpha_p_form: str = "corrected",
                      lambda_factor: float = 1.0) -> AsymptoticConstants:
    """Evaluate all asymptotic constants for ``cfg``.

    ``lambda_factor`` multiplies ``lam`` before it enters ``D_j``, ``a0``
    and ``alpha_I``.  It exists only so that the verification suite can
    prove it detects a corrupted ``lam``; leave it at 1.
    """
    require_imperfect(cfg)
    settings = settings or FactorizationSettings()
    p = kernel_params(cfg)
    dp = nondimensionalize(cfg)
    lam = p.lam * lambda_factor
    alpha, alpha_star = alpha_integral(cfg, settings)
    c1 = 1.0 / (cfg.mu1 * cfg.h1)
    c2 = -1.0 / (cfg.mu2 * cfg.h2)
    k = alpha / math.pi + 1.0 / lam
    H = cfg.h_total
    return AsymptoticConstants(
        eta=p.eta,
        lam=lam,
        alpha=alpha,
        alpha_star=alpha_star,
        c=(c1, c2),
        d=(-c1 * k, -c2 * k),
        a0=lam,
        gamma_plus=gamma_plus(cfg),
        gamma_minus=math.pi * min(1.0 / cfg.h1, 1.0 / cfg.h2),
        alpha_I=-k / H,
        alpha_P=float(alpha_perfect(dp, form=alpha_p_form)),
        h_total=H,
        mu_star=dp.mu_star,
        h_star=dp.h_star,
        kappa_star=dp.kappa_star,
        lambda_star=dp.lambda_star,
    )


def junction_coefficients(cfg: StripConfig, consts: AsymptoticConstants) -> JunctionCoefficients:
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    k = consts.opening_to_jump
    return JunctionCoefficients(
        opening_to_jump=k,
        weight2=b / (a + b),
        weight3=a / (a + b),
        tip_amplitude_factor=1.0 / (cfg.kappa * consts.lam),
        alpha_I_normalized=-k / cfg.h_total,
    )


# ---------------------------------------------------------------------------
# junction conditions


def junction_matrix(cfg: StripConfig, consts: AsymptoticConstants):
    """Assemble the 4x4 junction matrix ``M`` and return ``(M, det M)``.

    ``M`` acts on ``E = (C1, C2, D1, D2)`` of the boundary layer.  Its
    determinant is ``-(mu1 h1 mu2 h2)^2 (C1 - C2)^2`` and therefore
    negative for every configuration.
    """
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    c1, c2 = consts.c
    d1, d2 = consts.d
    M = np.array([
        [a, b, 0.0, 0.0],
        [0.0, 0.0, a, b],
        [a * d1, b * d2, -a * c1, -b * c2],
        [a * c1, b * c2, 0.0, 0.0],
    ])
    return M, float(np.linalg.det(M))


def junction_det_closed_form(cfg: StripConfig, consts: AsymptoticConstants) -> float:
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    c1, c2 = consts.c
    return -(a * b * (c1 - c2)) ** 2


class JunctionResult(NamedTuple):
    v2_first: float
    v3_first: float
    tip_amplitude: float


def junction_apply(delta_v_prime, v4_first, cfg: StripConfig,
                   consts: AsymptoticConstants) -> JunctionResult:
    """First order junction values at the crack vertex.

    Parameters
    ----------
    delta_v_prime : float or array
        Jump ``(v2')(x_B) - (v3')(x_B)`` of the zero order slopes.
    v4_first : float or array
        First order value ``v4(x_B)`` on the uncracked side.

    Returns
    -------
    JunctionResult
        ``v2 = v4 - w2 K delta``, ``v3 = v4 + w3 K delta`` with
        ``K = alpha/pi + 1/lam``, and the boundary layer amplitude
        ``a1 = delta/(kappa lam)``.
    """
    jc = junction_coefficients(cfg, consts)
    delta = np.asarray(delta_v_prime, dtype=float)
    v4 = np.asarray(v4_first, dtype=float)
    v2 = v4 - jc.weight2 * jc.opening_to_jump * delta
    v3 = v4 + jc.weight3 * jc.opening_to_jump * delta
    amp = jc.tip_amplitude_factor * delta
    unwrap = (lambda x: float(x)) if v2.ndim == 0 else (lambda x: x)
    return JunctionResult(unwrap(v2), unwrap(v3), unwrap(amp * np.ones_like(v2)))


def zero_order_rhs(v, a0_w, cfg: StripConfig, consts: AsymptoticConstants):
    """Right side of ``M E0 = r`` for zero order values ``v = (v2, v3, v4)``.

    ``a0_w`` is the zero order boundary layer amplitude.  A decaying
    boundary layer (``E0 = 0``) requires ``r = 0``.
    """
    v2, v3, v4 = v
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    c1, c2 = consts.c
    return np.array([
        0.0,
        (a + b) * v4 - a * v2 - b * v3,
        a * c1 * v2 + b * c2 * v3,
        cfg.kappa * consts.a0 * a0_w,
    ])


def first_order_rhs(v_first, dv_zero, a1_w, cfg: StripConfig, consts: AsymptoticConstants):
    """Right side of ``M E1 = r`` of the first order problem.

    Parameters
    ----------
    v_first : (v2, v3, v4)
        First order values at the vertex.
    dv_zero : (v2', v3', v4')
        Zero order slopes at the vertex.
    a1_w : float
        First order boundary layer amplitude.
    """
    v2, v3, v4 = v_first
    d2, d3, d4 = dv_zero
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    c1, c2 = consts.c
    e1, e2 = consts.d
    return np.array([
        (a + b) * d4 - a * d2 - b * d3,
        (a + b) * v4 - a * v2 - b * v3,
        a * c1 * v2 + b * c2 * v3 - a * e1 * d2 - b * e2 * d3,
        cfg.kappa * consts.a0 * a1_w - a * c1 * d2 - b * c2 * d3,
    ])


def zero_order_residuals(v, dv, cfg: StripConfig):
    """Residuals of the zero order junction conditions.

    Returns ``(continuity, flux)`` where ``continuity`` is
    ``max(|v2 - v4|, |v3 - v4|)`` and ``flux`` is
    ``(mu1 h1 + mu2 h2) v4' - mu1 h1 v2' - mu2 h2 v3'``.
    """
    v2, v3, v4 = v
    d2, d3, d4 = dv
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    continuity = max(abs(v2 - v4), abs(v3 - v4))
    flux = (a + b) * d4 - a * d2 - b * d3
    return continuity, flux


class SingularLimits(NamedTuple):
    jump_estimate: float
    flux_estimate: float
    kappa_lambda: float
    ratio: float


def singular_limits(cfg: StripConfig) -> SingularLimits:
    """Leading small-``kappa`` behaviour of the tip jump and tip flux.

    The jump magnitude behaves as ``sqrt(eta kappa)`` and the flux as
    ``-sqrt(eta/kappa)``.  Since ``lam^2 = eta/kappa`` holds identically,
    ``kappa lam = sqrt(eta kappa)`` for every configuration, so the
    reported ratio ``kappa lam / sqrt(eta kappa)`` equals 1 up to rounding.
    """
    p = kernel_params(cfg)
    jump = math.sqrt(p.eta * cfg.kappa)
    kl = cfg.kappa * p.lam
    return SingularLimits(jump_estimate=jump, flux_estimate=-math.sqrt(p.eta / cfg.kappa),
                          kappa_lambda=kl, ratio=kl / jump)
