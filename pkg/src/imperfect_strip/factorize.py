"""Multiplicative Wiener-Hopf factorization of the regularized kernel.

``Xi*`` is even, real and positive on the real axis and tends to 1 at the
origin and at infinity, so it splits as ``Xi* = Xi*+ Xi*-`` with

    Xi*+(xi) = exp(Theta(xi)/(2 pi i)),
    Theta(xi) = int ln Xi*(t)/(t - xi) dt      (line Im t = -beta),

and ``Xi*-(xi) = Xi*+(-xi)``.  ``Theta`` is evaluated for many ``xi`` at once:
the integral is folded onto ``t > 0`` with the evenness of ``ln Xi*`` and
handed to ``scipy.integrate.quad_vec`` as one vector-valued integrand, so
all points share a single adaptive subdivision.

Points close to the integration line are handled by subtracting
``ln Xi*(xi)`` from the numerator and adding back its exact integral, which
keeps the integrand bounded.  For points on the real axis this gives the
principal value plus half residue automatically.  Beyond ``|t| = T`` the
large-``t`` expansion ``ln Xi* ~ s/|t| - (lam^2 + s^2/2)/t^2`` is integrated
in closed form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .constants import alpha_integral, decay_scale, gamma_plus, _cutoff
from .errors import DomainError, QuadratureError
from .kernel import (StripConfig, KernelParams, eval_xi_star, kernel_params, log1p_complex,
                     log_xi_star, nondimensionalize)
from .settings import FactorizationSettings

logger = logging.getLogger(__name__)

__all__ = [
    "FactorizationSettings",
    "FactorizationResult",
    "AsymptoticsReport",
    "PlusFactor",
    "strip_half_width",
    "theta_plus",
    "factor_plus",
    "factor_minus",
    "verify_asymptotics",
    "factorize",
]

_TWO_PI_I = 2j * math.pi


def strip_half_width(cfg: StripConfig) -> float:
    """Half-width of the strip ``|Im xi| < h`` where ``ln Xi*`` is analytic.

    The singularities of ``Xi*`` nearest to the real axis are its poles at
    ``+/- i lam`` and the zeros ``+/- i gamma_+`` of the kernel; the poles
    of ``coth`` sit further out because ``gamma_+ < pi/max(h_j)``.
    """
    return min(kernel_params(cfg).lam, gamma_plus(cfg))


# ---------------------------------------------------------------------------
# closed-form tails


def _h_series(w):
    """``-log1p(-w)/w``, i.e. ``1 + w/2 + w^2/3 + ...``."""
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    small = np.abs(w) < 0.1
    ws = w[small]
    acc = np.zeros_like(ws)
    for k in range(16, 0, -1):
        acc = acc * ws + 1.0 / k
    out[small] = acc
    wb = w[~small]
    out[~small] = -log1p_complex(-wb) / wb
    return out


def _g_series(w):
    """``(log1p(-w) + w)/w^2``, i.e. ``-(1/2 + w/3 + w^2/4 + ...)``."""
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    small = np.abs(w) < 0.1
    ws = w[small]
    acc = np.zeros_like(ws)
    for k in range(17, 1, -1):
        acc = acc * ws - 1.0 / k
    out[small] = acc
    wb = w[~small]
    out[~small] = (log1p_complex(-wb) + wb) / (wb * wb)
    return out


def _tail(xi, a, b, T, beta):
    """Contribution of ``|Re t| > T`` on the line ``Im t = -beta``.

    Uses ``ln Xi*(t) ~ a/t + b/t^2`` for ``Re t > 0`` and the even extension
    for ``Re t < 0``; every logarithm is written through the stable
    helpers so that small ``xi`` loses no digits.
    """
    zr = T - 1j * beta
    zl = -T - 1j * beta
    wr, wl = xi / zr, xi / zl
    return (a / zr) * _h_series(wr) + (a / zl) * _h_series(wl) \
        - (b / zr ** 2) * _g_series(wr) + (b / zl ** 2) * _g_series(wl)


# ---------------------------------------------------------------------------
# the Cauchy integral


def _theta_batch(xi, cfg: StripConfig, settings: FactorizationSettings, beta: float,
                 near_width: float | None = None):
    """Vectorized ``Theta`` on the line ``Im t = -beta``.

    Returns ``(theta, info)`` with ``info`` a dict of diagnostics.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=complex)).ravel()
    if np.any(xi.imag <= -beta) and not (beta == 0 and np.all(xi.imag >= 0)):
        raise DomainError("Theta+ is defined above the integration line Im t = -beta only")
    p = kernel_params(cfg)
    dp = nondimensionalize(cfg)
    H = cfg.h_total
    T = _cutoff(dp, settings) / H
    if xi.size:
        T = max(T, 4.0 * float(np.max(np.abs(xi))) + 4.0 * beta)
    a = decay_scale(dp) / H
    b = -(p.lam ** 2 + 0.5 * a * a)

    out = np.zeros(xi.shape, dtype=complex)
    zero = xi == 0
    # the reflection xi -> -conj(xi) maps the problem onto Re xi >= 0
    flip = xi.real < 0
    z = np.where(flip, -np.conj(xi), xi)[~zero]
    if z.size == 0:
        return out, {"neval": 0, "T": T, "beta": beta, "error": 0.0}

    if near_width is None:
        near_width = 0.5 * strip_half_width(cfg)
    near = (z.imag + beta) < near_width
    lz = np.zeros(z.shape, dtype=complex)
    if np.any(near):
        lz[near] = log_xi_star(z[near], cfg, p)
    dist_floor = 1e-13 * max(1.0 / H, 1.0)

    def integrand(u):
        t = u - 1j * beta
        lt = complex(log_xi_star(t, cfg, p)) if beta else float(log_xi_star(u, cfg, p))
        d = t - z
        with np.errstate(divide="ignore", invalid="ignore"):
            first = (lt - lz) / d
        hit = np.abs(d) < dist_floor
        if np.any(hit):
            # removable 0/0 for a node falling on a near point: use L'(xi)
            h = 1e-6 / H
            zh = z[hit]
            first[hit] = (log_xi_star(zh + h, cfg, p) - log_xi_star(zh - h, cfg, p)) / (2 * h)
        return first - np.conj(lt) / (u + 1j * beta + z)

    ladder = [x / H for x in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0)]
    pts = sorted({x for x in ladder + [p.lam, a, 1 / cfg.h1, 1 / cfg.h2] if 0 < x < T})
    res, err, info = integrate.quad_vec(
        integrand, 0.0, T, epsabs=settings.quad_tol * 1e-3, epsrel=settings.quad_tol,
        norm="max", limit=settings.max_subdivisions, points=pts, full_output=True)
    if info.status != 0:
        errs = np.asarray(info.errors)
        k = int(np.argmax(errs))
        raise QuadratureError(
            f"Theta+ quadrature did not converge (status {info.status})",
            detail=f"worst subinterval {tuple(info.intervals[k])}, error {errs[k]:.3g}")

    if np.any(near):
        zn = z[near]
        w = -(zn + 1j * beta)
        # log(-(xi + i beta)) on the branch reached from inside the lower half plane
        arg = np.angle(zn + 1j * beta) - math.pi
        log_w = np.log(np.abs(w)) + 1j * arg
        res[near] += lz[near] * (np.log(T - 1j * beta - zn) - log_w)
    if settings.tail_correction:
        res += _tail(z, a, b, T, beta)

    theta = np.where(flip[~zero], -np.conj(res), res)
    out[~zero] = theta
    return out, {"neval": int(info.neval), "T": T, "beta": beta, "error": float(err)}


@lru_cache(maxsize=4)
def _gauss(n):
    return leggauss(n)


def _panel_rule(T, hs, n, ratio=0.75):
    """Composite Gauss-Legendre rule on ``[-T, T]`` for integrands analytic off
    the imaginary axis segment ``|Im t| >= hs``.  Panel widths grow with the
    distance ``sqrt(t^2 + hs^2)`` to the nearest possible singularity."""
    edges = [0.0]
    while edges[-1] < T:
        e = edges[-1]
        edges.append(min(T, e + ratio * math.hypot(e, hs)))
    edges = np.asarray(edges)
    x, w = _gauss(n)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    t = ((a + b) * 0.5 + half * x).ravel()
    wt = (half * w).ravel()
    return np.concatenate([-t[::-1], t]), np.concatenate([wt[::-1], wt])


def _theta_panel(xi, cfg: StripConfig, settings: FactorizationSettings, chunk: int = 2048):
    """``Theta`` from a fixed panel rule on the real axis.

    Every singularity of ``ln Xi*`` lies on the imaginary axis (``xi Xi`` has
    positive real part for ``Re xi > 0``), at distance at least ``hs`` from
    the origin.  After subtracting ``ln Xi*(xi)`` the integrand is analytic
    away from those points, so panels may widen in proportion to ``|t|`` and
    a few hundred nodes serve any number of points with ``|Im xi| < hs``.
    Points below the axis receive the analytic continuation.

    Returns ``(theta, info)``; ``info["error"]`` compares 16- and 8-point
    rules on the same panels.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=complex)).ravel()
    p = kernel_params(cfg)
    dp = nondimensionalize(cfg)
    H = cfg.h_total
    hs = strip_half_width(cfg)
    T = _cutoff(dp, settings) / H
    if xi.size:
        T = max(T, 4.0 * float(np.max(np.abs(xi))))
    a = decay_scale(dp) / H
    b = -(p.lam ** 2 + 0.5 * a * a)
    lz = log_xi_star(xi, cfg, p) if xi.size else np.zeros(0, complex)
    logterm = np.log(T - xi) - np.log(T + xi) + 1j * math.pi
    res = {}
    for n in (16, 8):
        t, w = _panel_rule(T, hs, n)
        lt = np.asarray(log_xi_star(t, cfg, p), dtype=float)
        acc = np.empty(xi.shape, dtype=complex)
        for i in range(0, xi.size, chunk):
            z = xi[i:i + chunk]
            q = (lt[:, None] - lz[None, i:i + chunk]) / (t[:, None] - z[None, :])
            acc[i:i + chunk] = w @ q
        res[n] = acc
    theta = res[16] + lz * logterm
    if settings.tail_correction:
        theta = theta + _tail(xi, a, b, T, 0.0)
    err = float(np.max(np.abs(res[16] - res[8]))) if xi.size else 0.0
    return theta, {"neval": int(3 * t.size), "T": T, "beta": 0.0, "error": err}


def _resolve_beta(xi, cfg, settings):
    """Pick the integration line for a batch that may dip below the axis."""
    lowest = float(np.min(xi.imag)) if xi.size else 0.0
    if lowest >= 0:
        return settings.beta
    if settings.beta > -lowest:
        return settings.beta
    hs = strip_half_width(cfg)
    if -lowest >= hs:
        raise DomainError(
            f"Im xi = {lowest:.6g} lies outside the strip of analyticity (half-width {hs:.6g})")
    return 0.5 * (hs - lowest)


def theta_plus(xi, cfg: StripConfig, settings: FactorizationSettings | None = None,
               return_info: bool = False, method: str = "auto"):
    """Auxiliary function ``Theta+(xi) = int ln Xi*(t)/(t - xi) dt``.

    Parameters
    ----------
    xi : complex or array_like
        Points in the closed upper half-plane.  Points inside the strip of
        analyticity below the axis are accepted too; the line of
        integration is then moved below them.
    cfg : StripConfig
    settings : FactorizationSettings, optional
    return_info : bool
        Also return the quadrature diagnostics.
    method : {"auto", "adaptive", "panel"}
        ``"adaptive"`` runs ``quad_vec`` on the line chosen from
        ``settings.beta``; ``"panel"`` uses the fixed real-axis rule, valid for
        ``|Im xi| < 0.9 hs``.  ``"auto"`` takes the panel rule when every point
        qualifies, ``settings.beta`` is zero and the embedded error estimate
        meets ``quad_tol``, and falls back to the adaptive engine otherwise.

    Notes
    -----
    ``Theta+(0) = 0`` because the integrand is odd there.  On the real axis
    the result is the principal value plus ``i pi ln Xi*(xi)``.
    """
    settings = settings or FactorizationSettings()
    if method not in ("auto", "adaptive", "panel"):
        raise ValueError(f"unknown method {method!r}")
    arr = np.asarray(xi, dtype=complex)
    flat = arr.ravel()
    val = None
    if method != "adaptive":
        inside = bool(np.all(np.abs(flat.imag) < 0.9 * strip_half_width(cfg)))
        if method == "panel" and not inside:
            raise DomainError("the panel rule needs |Im xi| < 0.9 hs")
        if inside and (method == "panel" or settings.beta == 0):
            val, info = _theta_panel(flat, cfg, settings)
            scale = max(1.0, float(np.max(np.abs(val)))) if val.size else 1.0
            if method == "auto" and info["error"] > 1e-2 * settings.quad_tol * scale:
                logger.debug("panel rule estimate %.3g too large; using quad_vec", info["error"])
                val = None
    if val is None:
        beta = _resolve_beta(flat, cfg, settings)
        val, info = _theta_batch(flat, cfg, settings, beta)
    val = val.reshape(arr.shape)
    if arr.ndim == 0:
        val = complex(val)
    return (val, info) if return_info else val


def factor_plus(xi, cfg: StripConfig, settings: FactorizationSettings | None = None):
    """``Xi*+(xi) = exp(Theta+(xi)/(2 pi i))``; analytic above the line."""
    th = theta_plus(xi, cfg, settings)
    return np.exp(np.asarray(th) / _TWO_PI_I) if np.ndim(th) else complex(np.exp(th / _TWO_PI_I))


def factor_minus(xi, cfg: StripConfig, settings: FactorizationSettings | None = None):
    """``Xi*-(xi) = Xi*+(-xi)``, analytic in the lower half-plane."""
    return factor_plus(-np.asarray(xi, dtype=complex) if np.ndim(xi) else -complex(xi),
                       cfg, settings)


# ---------------------------------------------------------------------------
# asymptotic checks


@dataclass(frozen=True)
class AsymptoticsReport:
    """Measured and predicted expansion coefficients of ``Xi*+``.

    ``zero_*`` refer to ``Xi*+ = 1 + c xi + O(xi^2)`` at the origin with
    target ``alpha/(pi i)``.  ``inf_*`` refer to
    ``Xi*+ = 1 + A ln(-i xi)/xi + O(1/xi)`` along the positive imaginary
    axis with target ``(mu1 + mu2)/(pi i mu1 mu2 kappa)``.
    ``inf_deviation_opposite`` is the deviation from the target with its
    sign reversed, which is what the Cauchy integral actually produces.
    """

    zero_coeff: complex
    zero_target: complex
    zero_deviation: float
    inf_coeff: complex
    inf_target: complex
    inf_deviation: float
    inf_deviation_opposite: float
    alpha: float


def _zero_coefficient(cfg, settings):
    """Richardson extrapolated ``(Xi*+(i y) - 1)/(i y)`` as ``y -> 0``."""
    H = cfg.h_total
    ys = 1e-3 / H / 2.0 ** np.arange(4)
    xi = 1j * ys
    th, _ = _theta_batch(xi, cfg, settings, 0.0)
    c = np.expm1(th / _TWO_PI_I) / xi
    # c(y) = c0 + c1 y + c2 y^2 + ...; two elimination sweeps
    r1 = 2 * c[1:] - c[:-1]
    r2 = (4 * r1[1:] - r1[:-1]) / 3
    return complex(r2[-1])


def _inf_coefficient(cfg, settings, y_scale=1e3):
    """Least-squares fit of ``xi ln Xi*+(xi) = A ln(-i xi) + B`` on ``xi = iY``."""
    H = cfg.h_total
    Y = y_scale / H * np.array([0.5, 1.0, 2.0])
    xi = 1j * Y
    th, _ = _theta_batch(xi, cfg, settings, 0.0)
    g = xi * th / _TWO_PI_I
    A = np.column_stack([np.log(Y), np.ones_like(Y)]).astype(complex)
    coef, *_ = np.linalg.lstsq(A, g, rcond=None)
    return complex(coef[0])


def verify_asymptotics(cfg: StripConfig, settings: FactorizationSettings | None = None,
                       alpha: float | None = None) -> AsymptoticsReport:
    """Measure the expansion coefficients of ``Xi*+`` at 0 and at infinity.

    Deviations are reported, not judged; thresholds are up to the caller.
    """
    settings = settings or FactorizationSettings()
    if alpha is None:
        alpha, _ = alpha_integral(cfg, settings)
    zc = _zero_coefficient(cfg, settings)
    zt = alpha / (math.pi * 1j)
    ic = _inf_coefficient(cfg, settings)
    it = (cfg.mu1 + cfg.mu2) / (math.pi * 1j * cfg.mu1 * cfg.mu2 * cfg.kappa)
    return AsymptoticsReport(
        zero_coeff=zc, zero_target=zt, zero_deviation=abs(zc - zt) / abs(zt),
        inf_coeff=ic, inf_target=it, inf_deviation=abs(ic - it) / abs(it),
        inf_deviation_opposite=abs(ic + it) / abs(it), alpha=alpha)


# ---------------------------------------------------------------------------
# packaged result


class PlusFactor:
    """Callable ``xi -> Xi*+(xi)`` bound to one configuration."""

    def __init__(self, cfg: StripConfig, settings: FactorizationSettings):
        self.cfg = cfg
        self.settings = settings

    def __call__(self, xi):
        return factor_plus(xi, self.cfg, self.settings)

    def theta(self, xi):
        return theta_plus(xi, self.cfg, self.settings)


@dataclass
class FactorizationResult:
    """Outcome of :func:`factorize`.

    Attributes
    ----------
    cfg : StripConfig
    settings : FactorizationSettings
    plus_factor : PlusFactor
        Callable returning ``Xi*+``.
    alpha_estimate : float
        ``alpha`` recovered from the slope of ``Xi*+`` at the origin (m).
    asym_zero_coeff : complex
        Measured coefficient of ``xi`` at the origin.
    asym_inf_coeff : complex
        Measured coefficient of ``ln(-i xi)/xi`` at infinity.
    diagnostics : dict
        ``identity_error`` (worst relative error of ``|Xi*+|^2 = Xi*`` on a
        real sample), ``evaluations``, ``strip_half_width``, ``cutoff``.
    """

    cfg: StripConfig
    settings: FactorizationSettings
    plus_factor: PlusFactor
    alpha_estimate: float
    asym_zero_coeff: complex
    asym_inf_coeff: complex
    diagnostics: dict = field(default_factory=dict)

    @property
    def params(self) -> KernelParams:
        return kernel_params(self.cfg)


def factorize(cfg: StripConfig, settings: FactorizationSettings | None = None,
              n_check: int = 64) -> FactorizationResult:
    """Build the plus factor of ``Xi*`` and its diagnostics.

    The identity ``|Xi*+(xi)|^2 = Xi*(xi)`` is checked on ``n_check`` real
    points spread over ``(0.01, 50)/H``, evaluated with the line of
    integration moved off the axis so that the check does not reduce to
    the Plemelj construction itself.
    """
    settings = settings or FactorizationSettings()
    H = cfg.h_total
    hs = strip_half_width(cfg)
    beta = settings.beta
    if not beta < hs:
        raise DomainError(f"beta = {beta} is not inside the strip half-width {hs}")
    zc = _zero_coefficient(cfg, settings)
    ic = _inf_coefficient(cfg, settings)
    t = np.geomspace(0.01, 50.0, n_check) / H
    th, info = _theta_batch(t.astype(complex), cfg, settings, 0.5 * hs)
    fp = np.exp(th / _TWO_PI_I)
    ref = eval_xi_star(t, cfg)
    ident = float(np.max(np.abs(fp * np.conj(fp) - ref) / ref))
    return FactorizationResult(
        cfg=cfg, settings=settings, plus_factor=PlusFactor(cfg, settings),
        alpha_estimate=float((math.pi * 1j * zc).real),
        asym_zero_coeff=zc, asym_inf_coeff=ic,
        diagnostics={"identity_error": ident, "evaluations": info["neval"],
                     "strip_half_width": hs, "cutoff": info["T"], "beta": beta})
