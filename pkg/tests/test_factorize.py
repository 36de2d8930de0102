import math

import numpy as np
import pytest

from imperfect_strip import DomainError, FactorizationSettings
from imperfect_strip.constants import alpha_integral
from imperfect_strip.factorize import (factor_minus, factor_plus, factorize, strip_half_width,
                                       theta_plus, verify_asymptotics)
from imperfect_strip.kernel import eval_xi_star

from conftest import GOLDENS, make_cfg

GOLDEN_CASES = [(c, y, v) for c in GOLDENS["configs"] for y, v in c["plus_imag_axis"].items()]


@pytest.mark.parametrize("case,y,want", GOLDEN_CASES,
                         ids=[f"{c['h_star']},{c['mu_star']},{c['kappa_star']}@i{y}"
                              for c, y, _ in GOLDEN_CASES])
def test_plus_factor_matches_mpmath_on_imaginary_axis(case, y, want):
    cfg = make_cfg(case["h_star"], case["mu_star"], case["kappa_star"])
    got = factor_plus(1j * float(y), cfg)
    assert abs(got - want) < 1e-9
    assert abs(got.imag) < 1e-12


def test_theta_vanishes_at_origin(asym_cfg):
    assert abs(theta_plus(0.0, asym_cfg)) < 1e-12


def test_identity_on_real_axis_shifted_contour(asym_cfg):
    hs = strip_half_width(asym_cfg)
    s = FactorizationSettings(beta=0.5 * hs)
    x = np.linspace(-30, 30, 41) + 0.0137
    fp = factor_plus(x, asym_cfg, s)
    ref = eval_xi_star(x, asym_cfg)
    assert np.max(np.abs(np.abs(fp) ** 2 - ref) / ref) < 1e-9


def test_panel_and_adaptive_agree(asym_cfg):
    hs = strip_half_width(asym_cfg)
    xi = np.array([0.3, -2.0, 7.0 + 0.5j, 1j, 3.0 - 0.4 * hs * 1j, 40.0 + 0.2j])
    a = theta_plus(xi, asym_cfg, method="adaptive")
    b = theta_plus(xi, asym_cfg, method="panel")
    assert np.max(np.abs(a - b)) < 1e-8


def test_panel_rule_rejects_points_outside_its_strip(asym_cfg):
    hs = strip_half_width(asym_cfg)
    with pytest.raises(DomainError):
        theta_plus(1j * hs, asym_cfg, method="panel")
    # the automatic choice falls back to the adaptive engine instead
    assert np.isfinite(theta_plus(1j * hs, asym_cfg))


def test_below_strip_rejected(asym_cfg):
    hs = strip_half_width(asym_cfg)
    with pytest.raises(DomainError):
        factor_plus(1.0 - 1.1j * hs, asym_cfg)


def test_unknown_method(asym_cfg):
    with pytest.raises(ValueError):
        theta_plus(1.0, asym_cfg, method="fft")


def test_wiener_hopf_product_inside_strip(asym_cfg):
    hs = strip_half_width(asym_cfg)
    xi = np.array([0.5, 2.0, -6.0]) + 0.3j * hs
    prod = factor_plus(xi, asym_cfg) * factor_minus(xi, asym_cfg)
    assert np.allclose(prod, eval_xi_star(xi, asym_cfg), rtol=1e-9)


def test_conjugate_symmetry_on_real_axis(asym_cfg):
    x = np.array([0.4, 3.0, 12.0])
    assert np.allclose(factor_plus(-x, asym_cfg), np.conj(factor_plus(x, asym_cfg)), rtol=1e-12)


def test_plus_factor_tends_to_one(asym_cfg):
    big = factor_plus(1e6j, asym_cfg)
    assert abs(big - 1) < 1e-3


def test_factorize_result(asym_bundle):
    cfg, fact, consts = asym_bundle
    assert fact.diagnostics["identity_error"] < 1e-8
    assert fact.alpha_estimate == pytest.approx(consts.alpha, rel=1e-6)
    assert fact.plus_factor(0.0) == pytest.approx(1.0)


def test_factorize_rejects_beta_outside_strip(asym_cfg):
    hs = strip_half_width(asym_cfg)
    with pytest.raises(DomainError):
        factorize(asym_cfg, FactorizationSettings(beta=hs))


@pytest.mark.parametrize("hmk", [(0.0, 0.0, 1.0), (0.3, -0.4, 2.0), (-0.7, 0.8, 0.05)])
def test_zero_asymptote(hmk):
    cfg = make_cfg(*hmk)
    rep = verify_asymptotics(cfg)
    assert rep.zero_deviation < 1e-4


def test_infinity_coefficient_has_reversed_sign(sym_cfg):
    """The measured coefficient of ln(-i xi)/xi is -(mu1+mu2)/(pi i mu1 mu2 kappa)."""
    rep = verify_asymptotics(sym_cfg)
    assert rep.inf_deviation_opposite < 0.05
    assert rep.inf_deviation > 1.5


def test_infinity_sign_from_modulus_identity(sym_cfg):
    # |Xi*+(iy)|^2 = Xi*+(iy)^2 grows above 1 along the imaginary axis, which
    # forces a positive coefficient of ln(y)/y in ln Xi*+(iy)
    y = np.array([1e2, 1e3, 1e4])
    v = np.log(factor_plus(1j * y, sym_cfg).real) * y
    assert np.all(np.diff(v) > 0)


def test_settings_validation():
    with pytest.raises(DomainError):
        FactorizationSettings(beta=-1.0)
    with pytest.raises(DomainError):
        FactorizationSettings(tail_cutoff=1.0)
    with pytest.raises(DomainError):
        FactorizationSettings(quad_tol=0.5)


def test_tail_correction_improves_alpha(sym_cfg):
    ref = GOLDENS["configs"][0]["alpha_star"]
    good, _ = alpha_integral(sym_cfg)
    blunt, _ = alpha_integral(sym_cfg, FactorizationSettings(tail_correction=False))
    assert abs(good - ref) < abs(blunt - ref)
    assert abs(good - ref) < 1e-10
