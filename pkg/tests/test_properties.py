"""Property-based checks over random strip configurations."""

import json
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from imperfect_strip import DimensionlessParams, dimensionalize, nondimensionalize
from imperfect_strip.config import parse_config
from imperfect_strip.constants import (alpha_star_dimensionless, compute_constants, gamma_plus,
                                       junction_det_closed_form, junction_matrix)
from imperfect_strip.kernel import eval_xi_star, kernel_params, xcm1

contrast = st.floats(-0.9, 0.9, allow_nan=False)
log_kappa = st.floats(-2.0, 2.0, allow_nan=False)
scale = st.floats(0.01, 100.0, allow_nan=False)

FAST = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False))
@settings(max_examples=200, deadline=None)
def test_xcm1_even(z):
    if abs(z) > 0 and abs(math.sin(z.imag)) < 1e-6 and abs(z.real) < 1e-6:
        return  # next to a pole
    a, b = xcm1(z), xcm1(-z)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@given(contrast, contrast, log_kappa)
@FAST
def test_xi_star_positive_and_even(h, m, lk):
    cfg = dimensionalize(DimensionlessParams(h, m, 10 ** lk))
    t = np.geomspace(1e-3, 1e3, 25)
    v = eval_xi_star(t, cfg)
    assert np.all(v > 0)
    assert np.array_equal(v, eval_xi_star(-t, cfg))


@given(contrast, contrast, log_kappa, scale, scale)
@FAST
def test_dimensionless_round_trip(h, m, lk, H, M):
    dp = DimensionlessParams(h, m, 10 ** lk, H)
    back = nondimensionalize(dimensionalize(dp, mu_total=M))
    assert back.h_star == pytest.approx(h, abs=1e-14)
    assert back.mu_star == pytest.approx(m, abs=1e-14)
    assert back.kappa_star == pytest.approx(10 ** lk, rel=1e-13)
    assert back.lambda_star == pytest.approx(dp.lambda_star, rel=1e-13)


@given(contrast, contrast, log_kappa)
@FAST
def test_swap_symmetry(h, m, lk):
    dp = DimensionlessParams(h, m, 10 ** lk)
    assert alpha_star_dimensionless(dp) == pytest.approx(alpha_star_dimensionless(dp.swapped()),
                                                         rel=1e-9, abs=1e-12)
    cfg = dimensionalize(dp)
    assert gamma_plus(cfg) == pytest.approx(gamma_plus(cfg.swapped()), rel=1e-12)


@given(contrast, contrast, log_kappa, scale, scale)
@FAST
def test_alpha_star_is_scale_free(h, m, lk, H, M):
    dp = DimensionlessParams(h, m, 10 ** lk)
    cfg = dimensionalize(dp, h_total=H, mu_total=M)
    k = compute_constants(cfg)
    assert k.alpha_star == pytest.approx(alpha_star_dimensionless(dp), rel=1e-8)
    assert k.gamma_plus * H == pytest.approx(gamma_plus(dimensionalize(dp)), rel=1e-11)


@given(contrast, contrast, log_kappa)
@FAST
def test_constants_identities(h, m, lk):
    cfg = dimensionalize(DimensionlessParams(h, m, 10 ** lk), mu_total=2.0)
    k = compute_constants(cfg)
    p = kernel_params(cfg)
    a, b = cfg.mu1 * cfg.h1, cfg.mu2 * cfg.h2
    assert abs(a * k.c[0] + b * k.c[1]) <= 1e-14 * a * abs(k.c[0])
    _, det = junction_matrix(cfg, k)
    assert det == pytest.approx(junction_det_closed_form(cfg, k), rel=1e-10)
    assert k.a0 == p.lam
    assert 0 < k.gamma_plus < math.pi / max(cfg.h1, cfg.h2)
    assert k.alpha_I < 0


@given(contrast, contrast, st.floats(0.0, 1e3), st.integers(0, 2 ** 31 - 1),
       st.sampled_from(["constants", "sweep", "field"]))
@settings(max_examples=50, deadline=None)
def test_config_round_trip(h, m, ks, seed, mode):
    data = {"mode": mode, "seed": seed,
            "strip": {"dimensionless": {"h_star": h, "mu_star": m, "kappa_star": ks}}}
    a = parse_config(data)
    assert parse_config(json.loads(a.to_json())) == a
