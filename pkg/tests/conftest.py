"""Shared fixtures: reference configurations, goldens and cached factorizations."""

import json
from pathlib import Path

import pytest

from imperfect_strip import DimensionlessParams, dimensionalize
from imperfect_strip.constants import compute_constants
from imperfect_strip.factorize import factorize

GOLDENS = json.loads((Path(__file__).parent / "oracles" / "goldens.json").read_text())


def make_cfg(h_star, mu_star, kappa_star, h_total=1.0, mu_total=2.0):
    return dimensionalize(DimensionlessParams(h_star, mu_star, kappa_star, h_total),
                          mu_total=mu_total)


@pytest.fixture(scope="session")
def goldens():
    return GOLDENS


@pytest.fixture(scope="session")
def sym_cfg():
    """Symmetric unit cell with kappa* = 1."""
    return make_cfg(0.0, 0.0, 1.0)


@pytest.fixture(scope="session")
def asym_cfg():
    """Asymmetric cell, thicker and softer upper layer, kappa* = 2."""
    return make_cfg(0.3, -0.4, 2.0)


@pytest.fixture(scope="session")
def sym_bundle(sym_cfg):
    return sym_cfg, factorize(sym_cfg), compute_constants(sym_cfg)


@pytest.fixture(scope="session")
def asym_bundle(asym_cfg):
    return asym_cfg, factorize(asym_cfg), compute_constants(asym_cfg)


# ---------------------------------------------------------------------------
# acceptance summary: test_acceptance.py records one line per criterion

ACCEPTANCE_LINES = {}


def record_acceptance(number, title, passed, detail):
    line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
