"""Command line front end: ``imperfect-strip {constants,factorize,sweep,field,verify}``.

Every subcommand reads an optional JSON run configuration (``--config``)
and writes its result to ``--out`` or standard output.  Exit codes:

=====  ==========================================================
0      success
1      invalid configuration or an argument outside its domain
2      numerical failure (quadrature, root finding, non-finite data)
3      the verification suite ran but at least one check failed
=====  ==========================================================
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from . import __version__
from .config import RunConfig, config_hash, default_config, load_config
from .constants import compute_constants, junction_coefficients, junction_matrix
from .errors import ConfigError, DomainError, QuadratureError
from .factorize import factor_plus, factorize
from .field import invert_field
from .kernel import eval_xi_star, require_imperfect
from .sweep import read_sweep, run_sweep
from .verify import run_checks

logger = logging.getLogger("imperfect_strip")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3
COMMANDS = ("constants", "factorize", "sweep", "field", "verify")
DEFAULT_FORMAT = {"constants": "json", "factorize": "json", "sweep": "csv", "field": "csv",
                  "verify": "json"}


# ---------------------------------------------------------------------------
# output helpers


def _jsonable(obj):
    """Recursively turn numpy scalars and complex numbers into JSON values."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def _dump_json(data) -> str:
    return json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n"


def _flat_csv(record: dict, header_lines) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    keys = list(record)
    w.writerow(keys)
    w.writerow([repr(float(record[k])) if isinstance(record[k], float) else record[k]
                for k in keys])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
        logger.info("wrote %s", path)


def _header(run: RunConfig, what: str) -> list[str]:
    return [f"imperfect_strip {__version__} {what}", f"config_sha256 {config_hash(run)}"]


# ---------------------------------------------------------------------------
# subcommands


def run_constants(run: RunConfig) -> int:
    cfg = run.strip.config()
    consts = compute_constants(cfg, run.factorization, alpha_p_form=run.sweep.alpha_p_form)
    jc = junction_coefficients(cfg, consts)
    _, det = junction_matrix(cfg, consts)
    rec = consts.as_record()
    rec.update({f"junction_{k}": v for k, v in jc.__dict__.items()})
    rec["junction_det"] = det
    rec.update({k: float(v) for k, v in cfg.to_dict().items()})
    if run.output_format == "csv":
        _emit(_flat_csv(rec, _header(run, "constants")), run.output_path)
    else:
        _emit(_dump_json(rec), run.output_path)
    return EXIT_OK


def run_factorize(run: RunConfig) -> int:
    cfg = run.strip.config()
    fact = factorize(cfg, run.factorization)
    H = cfg.h_total
    xi = np.concatenate([-np.geomspace(50.0, 0.01, 25), np.geomspace(0.01, 50.0, 25)]) / H
    fp = factor_plus(xi.astype(complex), cfg, run.factorization)
    ref = eval_xi_star(xi, cfg)
    if not np.all(np.isfinite(fp)):
        raise ArithmeticError("non-finite plus factor on the real axis")
    if run.output_format == "csv":
        buf = io.StringIO()
        for line in _header(run, "factorize"):
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["xi", "re_plus", "im_plus", "abs2_plus", "xi_star"])
        for x, f, r in zip(xi, fp, ref):
            w.writerow([repr(float(x)), repr(float(f.real)), repr(float(f.imag)),
                        repr(float(abs(f) ** 2)), repr(float(r))])
        _emit(buf.getvalue(), run.output_path)
    else:
        out = {
            "config": cfg.to_dict(),
            "alpha_estimate": fact.alpha_estimate,
            "asym_zero_coeff": fact.asym_zero_coeff,
            "asym_inf_coeff": fact.asym_inf_coeff,
            "diagnostics": fact.diagnostics,
        }
        _emit(_dump_json(out), run.output_path)
    return EXIT_OK


def run_sweep_cmd(run: RunConfig) -> int:
    mu, h = run.sweep.axes()
    text = run_sweep(run.sweep.kappa_stars, mu, h,
                     run.output_path if run.output_format == "csv" else None,
                     settings=run.factorization, alpha_p_form=run.sweep.alpha_p_form,
                     threads=run.threads, version=__version__, digest=config_hash(run))
    if run.output_format == "csv":
        if text is not None:
            _emit(text, None)
    else:
        _emit(_dump_json(read_sweep(text)), run.output_path)
    return EXIT_OK


def run_field(run: RunConfig) -> int:
    cfg = run.strip.config()
    require_imperfect(cfg)
    fact = factorize(cfg, run.factorization)
    spec = run.field_spec
    sample = invert_field(spec.grid(cfg), cfg, fact, run.field_settings,
                          component=spec.component, quantity=spec.quantity)
    if not np.all(np.isfinite(sample.values)):
        raise ArithmeticError("non-finite field values")
    if run.output_format == "csv":
        hdr = _header(run, "field") + [f"component {spec.component} quantity {spec.quantity}"]
        _emit(sample.to_csv(header="\n".join(hdr)), run.output_path)
    else:
        out = {
            "component": spec.component,
            "quantity": spec.quantity,
            "X": sample.grid[:, 0], "Y": sample.grid[:, 1],
            "value": sample.values, "error": sample.error_estimate,
            "contour_offset": sample.contour_offset, "truncation": sample.truncation,
        }
        _emit(_dump_json(out), run.output_path)
    return EXIT_OK


def run_verify(run: RunConfig) -> int:
    cfg = run.strip.config()
    require_imperfect(cfg)
    rep = run_checks(cfg, run.factorization, run.field_settings,
                     n_configs=run.verify.n_configs, n_points=run.verify.n_points,
                     seed=run.seed, lambda_factor=run.verify.lambda_factor)
    for c in rep.checks:
        logger.info("%-26s %s  %.3e (tol %.1e)", c.name, "PASS" if c.passed else "FAIL",
                    c.value, c.tolerance)
    _emit(_dump_json(rep.to_dict()), run.output_path)
    return EXIT_OK if rep.passed else EXIT_VERIFY


HANDLERS = {
    "constants": run_constants,
    "factorize": run_factorize,
    "sweep": run_sweep_cmd,
    "field": run_field,
    "verify": run_verify,
}


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default: csv for sweep and field, json otherwise)")
    common.add_argument("--threads", type=int, metavar="N", help="worker processes for sweeps")
    common.add_argument("--seed", type=int, metavar="S", help="seed of the randomized checks")
    common.add_argument("--tol", type=float, metavar="X",
                        help="relative tolerance of the factorization quadrature")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="more logging on stderr (repeatable)")

    p = argparse.ArgumentParser(
        prog="imperfect-strip",
        description="Weight-function constants of a cracked bi-material strip "
                    "with an imperfect interface.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "constants": "asymptotic and junction constants as one flat record",
        "factorize": "plus factor of the kernel and its diagnostics",
        "sweep": "alpha_I / alpha_P grid over the contrasts (CSV)",
        "field": "weight-function field at the configured points",
        "verify": "run the self-verification suite",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return p


def resolve_config(args) -> RunConfig:
    """Merge the config file with command line overrides."""
    run = load_config(args.config) if args.config else default_config()
    kw = {"mode": args.command}
    if args.out is not None:
        kw["output_path"] = args.out
    if args.format is not None:
        kw["output_format"] = args.format
    if kw.get("output_format", run.output_format) is None:
        kw["output_format"] = DEFAULT_FORMAT[args.command]
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError("must be >= 1", field="threads")
        kw["threads"] = args.threads
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.tol is not None:
        try:
            kw["factorization"] = run.factorization.replace(quad_tol=args.tol)
        except DomainError as exc:
            raise ConfigError(str(exc), field="numerics.factorization.quad_tol") from exc
    return run.replace(**kw)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    try:
        run = resolve_config(args)
        return HANDLERS[args.command](run)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
