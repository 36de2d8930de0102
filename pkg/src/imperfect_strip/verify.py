"""Self-verification suite run by ``imperfect-strip verify``.

Every check measures a deviation and compares it with a fixed tolerance.
The suite is sequential and seeded, so two runs with the same
configuration print the same report.

Checks that involve ``lam`` compare against the value stored in
:class:`~imperfect_strip.constants.AsymptoticConstants`.  The
``lambda_factor`` hook corrupts that value, which lets the tests confirm
that the suite notices (see ``tests/test_verify.py``).
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from .config import al_fe_cell
from .constants import (compute_constants, gamma_plus, gamma_plus_residual,
                        junction_det_closed_form, junction_matrix)
from .factorize import (factor_plus, factorize, strip_half_width, theta_plus,
                        verify_asymptotics)
from .field import TransformPair, theorem_b_oracle, validate_field
from .kernel import (DimensionlessParams, StripConfig, dimensionalize, eval_xi_star,
                     kernel_params, log_xi_star, nondimensionalize)
from .settings import FactorizationSettings, FieldSettings

logger = logging.getLogger(__name__)

__all__ = ["CheckResult", "VerifyReport", "random_configs", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [asdict(c) for c in self.checks]}


def _check(name, value, tol, detail=""):
    value = float(value)
    ok = math.isfinite(value) and value <= tol
    return CheckResult(name, bool(ok), value, float(tol), detail)


def random_configs(n: int, seed: int, contrast: float = 0.9,
                   kappa_range=(1e-2, 1e2)) -> list[StripConfig]:
    """``n`` reproducible configurations with ``H = 1`` and ``mu1 + mu2 = 2``."""
    rng = np.random.default_rng(seed)
    out = []
    lo, hi = np.log10(kappa_range[0]), np.log10(kappa_range[1])
    for _ in range(n):
        h, m = rng.uniform(-contrast, contrast, 2)
        k = 10.0 ** rng.uniform(lo, hi)
        out.append(dimensionalize(DimensionlessParams(float(h), float(m), float(k)), mu_total=2.0))
    return out


def check_kappa_star() -> CheckResult:
    got = [nondimensionalize(al_fe_cell(s)).kappa_star for s in (1000.0, 1.0, 0.1)]
    want = [2.88e-3, 2.88, 28.8]
    dev = max(abs(g - w) / w for g, w in zip(got, want))
    return _check("kappa_star_al_fe", dev, 5e-4, f"kappa* = {got}")


def check_identity(configs, n_points, seed, settings) -> CheckResult:
    """``|Xi*+|^2 = Xi*`` on the real axis.

    On the axis itself the boundary value carries ``i pi ln Xi*`` exactly,
    so the Cauchy line is moved to ``Im t = -hs/2`` to make the check
    exercise the quadrature.
    """
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for cfg in configs:
        xi = rng.uniform(-50.0, 50.0, n_points) / cfg.h_total
        shifted = settings.replace(beta=0.5 * strip_half_width(cfg))
        fp = factor_plus(xi, cfg, shifted)
        ref = eval_xi_star(xi, cfg)
        worst = max(worst, float(np.max(np.abs(fp * np.conj(fp) - ref) / ref)))
    return _check("factorization_identity", worst, 1e-6,
                  f"{len(configs)} configs x {n_points} real points")


def check_plemelj(cfg, settings) -> CheckResult:
    """``Theta+`` on the real axis equals the principal value plus ``i pi ln Xi*``.

    The principal value is recomputed independently with QUADPACK's
    Cauchy-weight rule on ``[-T, T]`` plus the same closed-form tail.
    """
    from scipy import integrate

    from .constants import _cutoff, decay_scale
    from .factorize import _tail

    p = kernel_params(cfg)
    dp = nondimensionalize(cfg)
    H = cfg.h_total
    T = _cutoff(dp, settings) / H
    a = decay_scale(dp) / H
    b = -(p.lam ** 2 + 0.5 * a * a)
    xs = np.array([0.3, 1.0, 2.5, 7.0]) / H
    th = theta_plus(xs.astype(complex), cfg, settings)
    worst = 0.0
    for x, t in zip(xs, th):
        f = lambda u: float(log_xi_star(u, cfg, p))
        pv, _ = integrate.quad(f, x / 2, 2 * x, weight="cauchy", wvar=x, epsabs=1e-13,
                               epsrel=1e-12, limit=200)
        rest = 0.0
        for lo, hi in [(-T, -2 * x), (-2 * x, -x / 2), (-x / 2, x / 2), (2 * x, T)]:
            r, _ = integrate.quad(lambda u: f(u) / (u - x), lo, hi, epsabs=1e-13,
                                  epsrel=1e-12, limit=400)
            rest += r
        ref = pv + rest + complex(_tail(np.array([x + 0j]), a, b, T, 0.0)[0]).real
        lx = f(x)
        worst = max(worst, abs(t.real - ref), abs(t.imag - math.pi * lx))
    return _check("plemelj_boundary_value", worst, 1e-7,
                  "Theta+(x) = PV + i pi ln Xi*(x), PV from a Cauchy-weight rule")


def check_gamma_plus(configs) -> CheckResult:
    worst = max(abs(gamma_plus_residual(c, gamma_plus(c))) for c in configs)
    return _check("gamma_plus_residual", worst, 1e-10)


def check_constants(configs, settings, lambda_factor) -> list[CheckResult]:
    ident = det = lam = a0 = gm = 0.0
    for cfg in configs:
        k = compute_constants(cfg, settings, lambda_factor=lambda_factor)
        a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
        ident = max(ident, abs(a * k.c[0] + b * k.c[1]) / (a * abs(k.c[0])))
        _, d = junction_matrix(cfg, k)
        ref = junction_det_closed_form(cfg, k)
        det = max(det, abs(d - ref) / abs(ref))
        lam = max(lam, abs(k.lam ** 2 - k.eta / cfg.kappa) / (k.eta / cfg.kappa))
        a0 = max(a0, abs(k.a0 - kernel_params(cfg).lam) / kernel_params(cfg).lam)
        gm = max(gm, abs(k.gamma_minus - math.pi * min(1 / cfg.h1, 1 / cfg.h2)) / k.gamma_minus)
    return [
        _check("flux_balance_C", ident, 1e-12, "mu1 h1 C1 + mu2 h2 C2 = 0"),
        _check("junction_det", det, 1e-10, "det M = -(mu1 h1 mu2 h2)^2 (C1 - C2)^2"),
        _check("lambda_identity", lam, 1e-12, "lam^2 = eta/kappa"),
        _check("a0_equals_lambda", a0, 1e-12),
        _check("gamma_minus", gm, 1e-14),
    ]


def check_asymptotics(cfg, settings) -> list[CheckResult]:
    rep = verify_asymptotics(cfg, settings)
    return [
        _check("zero_asymptote", rep.zero_deviation, 1e-4,
               f"measured {rep.zero_coeff:.10g}, target alpha/(pi i) = {rep.zero_target:.10g}"),
        _check("infinity_asymptote", rep.inf_deviation_opposite, 0.05,
               f"measured {rep.inf_coeff:.6g}; matches -(mu1+mu2)/(pi i mu1 mu2 kappa) "
               f"(deviation {rep.inf_deviation_opposite:.3g}); the opposite sign deviates by "
               f"{rep.inf_deviation:.3g}"),
    ]


def check_field(cfg, fact, consts, field_settings) -> list[CheckResult]:
    v = validate_field(cfg, fact, consts, field_settings)
    tip = v.tip
    flux_dev = abs(tip.flux_limit + consts.a0) / consts.a0
    jump_dev = abs(tip.jump_limit + cfg.kappa * consts.a0) / (cfg.kappa * consts.a0)
    d1_dev = abs(v.intercept - consts.d[0]) / abs(consts.d[0])
    return [
        _check("far_field_C1", v.deviations["C1"], 0.01, f"slope {v.slope:.10g}"),
        _check("far_field_D1", d1_dev, 0.02, f"intercept {v.intercept:.10g} vs D1 {consts.d[0]:.10g}"),
        _check("decay_gamma_plus", v.deviations["gamma_plus"], 0.05, f"rate {v.decay_rate:.10g}"),
        _check("tip_flux", flux_dev, 0.02, f"limit {tip.flux_limit:.10g} vs -a0"),
        _check("tip_jump", jump_dev, 0.02, f"limit {tip.jump_limit:.10g} vs -kappa a0"),
    ]


def check_d_coefficients(cfg, fact, consts) -> CheckResult:
    """``D_j = -C_j (alpha/pi + 1/lam)`` rebuilt from independent inputs.

    ``alpha`` comes from the slope of ``Xi*+`` at the origin (not from the
    moment integral used by the constants module) and ``lam`` from the
    kernel parameters.
    """
    lam = kernel_params(cfg).lam
    k = fact.alpha_estimate / math.pi + 1.0 / lam
    dev = max(abs(consts.d[j] + consts.c[j] * k) / abs(consts.c[j] * k) for j in (0, 1))
    return _check("D_coefficients", dev, 1e-6,
                  "D_j vs -C_j (alpha/pi + 1/lam) with alpha from the factorization")


def check_theorem_b(cfg, fact, consts) -> list[CheckResult]:
    syn = theorem_b_oracle(1.0, lambda t: 1.0 / (t + 1j))
    tp = TransformPair(fact)
    real = theorem_b_oracle(tp.params.lam / 1j, tp.phi_plus, length=cfg.h_total,
                            distance=tp.gamma_plus)
    lim_dev = abs(real.limit + consts.a0) / consts.a0
    return [
        _check("theorem_b_synthetic", abs(syn.limit + 1j), 1e-3, f"limit {syn.limit:.8g}"),
        _check("theorem_b_phi_plus", lim_dev, 0.02, f"limit {real.limit:.8g} vs -a0"),
        _check("theorem_b_negative_x", real.negative_side, 1e-4, "|f(-H)|/|a1|"),
    ]


def run_checks(cfg: StripConfig, settings: FactorizationSettings | None = None,
               field_settings: FieldSettings | None = None, n_configs: int = 20,
               n_points: int = 200, seed: int = 0, lambda_factor: float = 1.0,
               include_field: bool = True) -> VerifyReport:
    """Run the whole suite for ``cfg`` plus ``n_configs`` random configurations."""
    settings = settings or FactorizationSettings()
    configs = random_configs(n_configs, seed)
    checks = [check_kappa_star()]
    logger.info("verify: factorization identity on %d configs", len(configs))
    checks.append(check_identity(configs, n_points, seed, settings))
    checks.append(check_plemelj(cfg, settings))
    checks.append(check_gamma_plus(configs + [cfg]))
    checks += check_constants(configs + [cfg], settings, lambda_factor)
    checks += check_asymptotics(cfg, settings)
    fact = factorize(cfg, settings)
    consts = compute_constants(cfg, settings, lambda_factor=lambda_factor)
    checks.append(check_d_coefficients(cfg, fact, consts))
    if include_field:
        logger.info("verify: field reconstruction")
        checks += check_field(cfg, fact, consts, field_settings)
    checks += check_theorem_b(cfg, fact, consts)
    return VerifyReport(checks)
