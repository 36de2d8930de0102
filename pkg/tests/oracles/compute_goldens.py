"""Independent reference values for the test-suite, frozen in ``goldens.json``.

Nothing here imports ``imperfect_strip``.  Every quantity is rebuilt with
mpmath at 30 significant digits straight from the raw ``coth`` form of the
kernel, so the package's series/overflow helpers, its tail corrections and
its QUADPACK calls are all bypassed.

Run from the repository root to regenerate::

    python3 tests/oracles/compute_goldens.py
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 30

# (h_star, mu_star, kappa_star) with H = 1 and mu1 + mu2 = 2
CONFIGS = [
    (0.0, 0.0, 1.0),
    (0.3, -0.4, 2.0),
    (-0.5, 0.7, 0.1),
    (0.6, 0.2, 25.0),
]
ALPHA_P_POINTS = [(0.0, 0.0), (0.3, -0.4), (-0.5, 0.7), (0.8, 0.8)]
PLUS_POINTS = [0.05, 0.5, 2.0, 10.0]  # xi = i y (units of 1/H)


def physical(h, m, k):
    H, M = mp.mpf(1), mp.mpf(2)
    return dict(mu1=M * (1 + m) / 2, mu2=M * (1 - m) / 2, h1=H * (1 + h) / 2,
                h2=H * (1 - h) / 2, kappa=k * H / M)


def lam2(p):
    return (p["mu1"] * p["h1"] + p["mu2"] * p["h2"]) / (p["mu1"] * p["mu2"] * p["h1"] * p["h2"] * p["kappa"])


def xi_star(t, p):
    """``xi^2 Xi(xi) / (kappa (lam^2 + xi^2))`` evaluated naively in high precision."""
    if t == 0:
        return mp.mpf(1)
    num = t * (mp.coth(t * p["h1"]) / p["mu1"] + mp.coth(t * p["h2"]) / p["mu2"]) + p["kappa"] * t * t
    return num / (p["kappa"] * (lam2(p) + t * t))


def ln_xi_star(t, p):
    return mp.log(xi_star(t, p))


def _breaks(p):
    lam = mp.sqrt(lam2(p))
    s = (p["mu1"] + p["mu2"]) / (p["mu1"] * p["mu2"] * p["kappa"])
    pts = sorted({mp.mpf(0), 1 / p["h1"], 1 / p["h2"], lam, s, 10 * max(lam, s), 100 * max(lam, s)})
    return pts + [mp.inf]


def alpha(p):
    """``int_0^inf ln Xi*(t)/t^2 dt``; the small-t limit is handled by the precision."""
    f = lambda t: ln_xi_star(t, p) / (t * t) if t > mp.mpf("1e-12") else _c0(p)
    return mp.quad(f, _breaks(p))


def _c0(p):
    # ln Xi* ~ c0 t^2; use a tiny-t evaluation (30 digits absorb the cancellation)
    t = mp.mpf("1e-8")
    return ln_xi_star(t, p) / (t * t)


def plus_on_imaginary_axis(y, p):
    """``Xi*+(i y) = exp((y/pi) int_0^inf ln Xi*(t)/(t^2 + y^2) dt)`` for y > 0."""
    f = lambda t: ln_xi_star(t, p) / (t * t + y * y)
    return mp.exp(y / mp.pi * mp.quad(f, _breaks(p)))


def gamma_plus(p):
    """First root of ``cot(g h1)/mu1 + cot(g h2)/mu2 = kappa g`` by bisection then Newton."""
    f = lambda g: mp.cot(g * p["h1"]) / p["mu1"] + mp.cot(g * p["h2"]) / p["mu2"] - p["kappa"] * g
    top = mp.pi / max(p["h1"], p["h2"])
    lo, hi = top * mp.mpf("1e-6"), top * (1 - mp.mpf("1e-6"))
    for _ in range(60):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return mp.findroot(f, (lo + hi) / 2)


def alpha_p(h, m):
    """Perfect-interface constant from the hyperbolic integrand, evaluated directly."""
    h, m = mp.mpf(h), mp.mpf(m)
    a, b = (1 + h) / 2, (1 - h) / 2
    first = (a * mp.log(a) + b * mp.log(b)) / mp.pi
    if m == 0:
        return first

    def g(t):
        if t < mp.mpf("1e-10"):
            t = mp.mpf("1e-10")
        return (h * mp.cosh(t * h) - mp.sinh(t * h) * mp.coth(t)) / ((mp.sinh(t) + m * mp.sinh(t * h)) * t)

    return first - m / mp.pi * mp.quad(g, [0, 1, 5, 20, 60, mp.inf])


def main():
    out = {"dps": mp.mp.dps, "configs": []}
    for h, m, k in CONFIGS:
        p = physical(mp.mpf(h), mp.mpf(m), mp.mpf(k))
        rec = {
            "h_star": h, "mu_star": m, "kappa_star": k,
            "alpha_star": float(alpha(p)),
            "gamma_plus_H": float(gamma_plus(p)),
            "lambda_star": float(mp.sqrt(lam2(p))),
            "plus_imag_axis": {str(y): float(plus_on_imaginary_axis(mp.mpf(y), p)) for y in PLUS_POINTS},
        }
        out["configs"].append(rec)
        print(rec)
    out["alpha_P"] = [{"h_star": h, "mu_star": m, "alpha_P": float(alpha_p(h, m))}
                      for h, m in ALPHA_P_POINTS]
    out["alpha_P_symmetric"] = float(-mp.log(2) / mp.pi)
    print(out["alpha_P"])
    path = Path(__file__).with_name("goldens.json")
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print("wrote", path)


if __name__ == "__main__":
    main()
