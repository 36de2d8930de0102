import pytest

from imperfect_strip import FactorizationSettings
from imperfect_strip.verify import (check_constants, check_d_coefficients, check_identity,
                                    check_plemelj, random_configs, run_checks)
from imperfect_strip.constants import compute_constants


def test_random_configs_reproducible():
    a, b = random_configs(4, 3), random_configs(4, 3)
    assert a == b
    assert a != random_configs(4, 4)


def test_default_suite_passes(sym_cfg):
    rep = run_checks(sym_cfg, n_configs=3, n_points=20)
    failed = [c.name for c in rep.checks if not c.passed]
    assert rep.passed, failed
    names = {c.name for c in rep.checks}
    for n in ("factorization_identity", "plemelj_boundary_value", "gamma_plus_residual",
              "junction_det", "far_field_C1", "theorem_b_synthetic", "D_coefficients"):
        assert n in names


@pytest.mark.parametrize("factor", [1.01, 0.99])
def test_corrupted_lambda_detected(asym_bundle, factor):
    cfg, fact, _ = asym_bundle
    bad = compute_constants(cfg, lambda_factor=factor)
    assert not check_d_coefficients(cfg, fact, bad).passed
    res = {c.name: c for c in check_constants([cfg], FactorizationSettings(), factor)}
    assert not res["lambda_identity"].passed
    assert not res["a0_equals_lambda"].passed
    # det M depends on C_j only and cannot see lam
    assert res["junction_det"].passed


def test_identity_and_plemelj(asym_cfg):
    s = FactorizationSettings()
    assert check_identity(random_configs(2, 0), 30, 0, s).passed
    assert check_plemelj(asym_cfg, s).passed


def test_report_dict(sym_cfg):
    rep = run_checks(sym_cfg, n_configs=1, n_points=5, include_field=False)
    d = rep.to_dict()
    assert d["passed"] is True
    assert {"name", "passed", "value", "tolerance", "detail"} <= set(d["checks"][0])
