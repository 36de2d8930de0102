import math

import numpy as np
import pytest

from imperfect_strip import DimensionlessParams, DomainError, QuadratureError, StripConfig
from imperfect_strip.config import al_fe_cell
from imperfect_strip.constants import (alpha_imperfect, alpha_integral, alpha_perfect,
                                       alpha_star_dimensionless, compute_constants, gamma_plus,
                                       gamma_plus_residual, junction_apply, junction_coefficients,
                                       junction_det_closed_form, junction_matrix,
                                       singular_limits)
from imperfect_strip.kernel import kernel_params, nondimensionalize

from conftest import GOLDENS, make_cfg


@pytest.mark.parametrize("g", GOLDENS["configs"], ids=lambda g: f"{g['h_star']},{g['mu_star']},{g['kappa_star']}")
def test_alpha_star_and_gamma_against_mpmath(g):
    dp = DimensionlessParams(g["h_star"], g["mu_star"], g["kappa_star"])
    assert alpha_star_dimensionless(dp) == pytest.approx(g["alpha_star"], rel=1e-9)
    cfg = make_cfg(g["h_star"], g["mu_star"], g["kappa_star"])
    assert gamma_plus(cfg) * cfg.h_total == pytest.approx(g["gamma_plus_H"], rel=1e-12)


@pytest.mark.parametrize("g", GOLDENS["alpha_P"], ids=lambda g: f"{g['h_star']},{g['mu_star']}")
def test_alpha_perfect_against_mpmath(g):
    dp = DimensionlessParams(g["h_star"], g["mu_star"], 1.0)
    assert alpha_perfect(dp) == pytest.approx(g["alpha_P"], rel=1e-10)


def test_alpha_perfect_symmetric_is_minus_ln2_over_pi():
    assert alpha_perfect(DimensionlessParams(0.0, 0.0, 0.0)) == pytest.approx(-math.log(2) / math.pi,
                                                                             abs=1e-14)


def test_alpha_perfect_printed_form_differs_off_mu_zero():
    dp = DimensionlessParams(0.5, 0.6, 0.0)
    assert abs(alpha_perfect(dp, "printed") - alpha_perfect(dp)) > 1e-3
    with pytest.raises(ValueError):
        alpha_perfect(dp, "other")


def test_alpha_physical_and_dimensionless_agree():
    cfg = make_cfg(0.3, -0.4, 2.0, h_total=0.2, mu_total=5e9)
    a, a_star = alpha_integral(cfg)
    assert a_star == pytest.approx(alpha_star_dimensionless(nondimensionalize(cfg)), rel=1e-9)
    assert a == pytest.approx(a_star * cfg.h_total, rel=1e-15)


def test_alpha_imperfect_negative_and_consistent(asym_cfg):
    k = compute_constants(asym_cfg)
    ai = alpha_imperfect(nondimensionalize(asym_cfg))
    assert ai < 0
    assert ai == pytest.approx(k.alpha_I * asym_cfg.h_total, rel=1e-12)


def test_kappa_limit_of_alpha_imperfect():
    for h, m in [(0.0, 0.0), (0.5, -0.5), (-0.8, 0.6)]:
        ai = alpha_imperfect(DimensionlessParams(h, m, 1e-6))
        ap = alpha_perfect(DimensionlessParams(h, m, 0.0))
        assert ai / ap == pytest.approx(1.0, abs=0.01)


def test_constants_identities(asym_bundle):
    cfg, _, k = asym_bundle
    p = kernel_params(cfg)
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    assert a * k.c[0] + b * k.c[1] == pytest.approx(0.0, abs=1e-14)
    for j in (0, 1):
        assert k.d[j] == pytest.approx(-k.c[j] * (k.alpha / math.pi + 1 / p.lam), rel=1e-14)
    assert k.a0 == p.lam
    assert k.gamma_minus == pytest.approx(math.pi / max(cfg.h1, cfg.h2), rel=1e-15)
    _, det = junction_matrix(cfg, k)
    assert det == pytest.approx(junction_det_closed_form(cfg, k), rel=1e-10)
    assert det < 0


def test_gamma_minus_example():
    cfg = StripConfig(1.0, 2.0, 0.1, 0.05, 1e-3)
    assert compute_constants(cfg).gamma_minus == pytest.approx(10 * math.pi, rel=1e-15)


def test_as_record_flat(sym_bundle):
    rec = sym_bundle[2].as_record()
    for key in ("C1", "C2", "D1", "D2", "alpha_star", "lambda_star", "gamma_plus_H"):
        assert isinstance(rec[key], float)


def test_kappa_star_al_fe():
    assert nondimensionalize(al_fe_cell()).kappa_star == pytest.approx(2.88, rel=5e-4)
    assert nondimensionalize(al_fe_cell(1000.0)).kappa_star == pytest.approx(2.88e-3, rel=5e-4)
    assert nondimensionalize(al_fe_cell(0.1)).kappa_star == pytest.approx(28.8, rel=5e-4)


def test_gamma_plus_perfect_symmetric():
    H = 0.37
    cfg = StripConfig(3.0, 3.0, H, H, 0.0)
    assert gamma_plus(cfg) == pytest.approx(math.pi / (2 * H), rel=1e-12)


def test_gamma_plus_perfect_bracket():
    cfg = StripConfig(1.0, 5.0, 0.3, 0.7, 0.0)
    g = gamma_plus(cfg)
    assert math.pi / (2 * 0.7) < g < math.pi / (2 * 0.3)


def test_gamma_plus_is_first_root(asym_cfg):
    g = gamma_plus(asym_cfg)
    assert abs(gamma_plus_residual(asym_cfg, g)) < 1e-10
    grid = np.linspace(1e-6 * g, g * (1 - 1e-6), 400)
    assert all(gamma_plus_residual(asym_cfg, x) > 0 for x in grid)


@pytest.mark.parametrize("hm", [(0.0, 0.0), (0.5, -0.3), (-0.9, 0.9)])
def test_gamma_plus_large_kappa(hm):
    cfg = make_cfg(*hm, 1e4)
    assert abs(gamma_plus(cfg) / kernel_params(cfg).lam - 1) < 0.02


def test_gamma_plus_bad_input():
    cfg = StripConfig(1.0, 1.0, 0.5, 0.5, 0.5)
    object.__setattr__(cfg, "kappa", math.nan)
    with pytest.raises(QuadratureError):
        gamma_plus(cfg)


def test_constants_reject_perfect():
    with pytest.raises(DomainError):
        compute_constants(StripConfig(1.0, 1.0, 0.5, 0.5, 0.0))


def test_junction_apply(asym_bundle):
    cfg, _, k = asym_bundle
    jc = junction_coefficients(cfg, k)
    assert jc.weight2 + jc.weight3 == pytest.approx(1.0)
    res = junction_apply(0.2, 1.5, cfg, k)
    assert res.v2_first - res.v3_first == pytest.approx(-0.2 * jc.opening_to_jump, rel=1e-14)
    assert res.tip_amplitude == pytest.approx(0.2 / (cfg.kappa * k.lam), rel=1e-14)
    vec = junction_apply(np.array([0.1, 0.2]), np.array([1.0, 1.5]), cfg, k)
    assert vec.v2_first[1] == pytest.approx(res.v2_first)


def test_singular_limits_ratio_is_one():
    for kappa_star in (1e-6, 1e-2, 1.0):
        lim = singular_limits(make_cfg(0.4, 0.2, kappa_star))
        assert lim.ratio == pytest.approx(1.0, rel=1e-14)


def test_lambda_factor_hook_only_touches_lambda_terms(asym_cfg):
    a = compute_constants(asym_cfg)
    b = compute_constants(asym_cfg, lambda_factor=1.01)
    assert b.c == a.c and b.alpha == a.alpha
    assert b.a0 == pytest.approx(1.01 * a.a0)
    assert b.d != a.d
