"""Run configuration: parsing, validation and canonical serialization.

A run is described by one JSON document validated against the schema
shipped in ``imperfect_strip/schema/run_config.schema.json``.  Parsing
turns it into a :class:`RunConfig`; :meth:`RunConfig.to_dict` writes the
canonical form back, with every default filled in, so that parse,
serialize, parse is the identity.  :func:`config_hash` digests the
canonical form and ends up in CSV headers.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .errors import ConfigError, StripError
from .kernel import DimensionlessParams, StripConfig, dimensionalize, nondimensionalize
from .settings import FactorizationSettings, FieldSettings

__all__ = [
    "StripSpec",
    "SweepSpec",
    "FieldSpec",
    "VerifySpec",
    "RunConfig",
    "load_schema",
    "parse_config",
    "load_config",
    "config_hash",
    "resin_compliance",
    "al_fe_cell",
]

MODES = ("constants", "factorize", "sweep", "field", "verify")


def load_schema() -> dict:
    """Return the JSON schema of the run configuration."""
    text = resources.files("imperfect_strip").joinpath("schema/run_config.schema.json").read_text()
    return json.loads(text)


def resin_compliance(h_resin: float, mu_resin: float) -> float:
    """Compliance ``kappa = h/mu`` of a thin, soft bonding layer (m/Pa)."""
    return h_resin / mu_resin


def al_fe_cell(resin_scale: float = 1.0) -> StripConfig:
    """Aluminium (upper) on iron (lower) with an epoxy bonding layer.

    ``h1 = 0.1 m``, ``h2 = 0.05 m``, ``mu1 = 26 GPa``, ``mu2 = 82 GPa``; the
    resin layer is 0.01 m thick with modulus ``2.5 GPa * resin_scale``.
    ``resin_scale = 1`` gives ``kappa* = 2.88``.
    """
    return StripConfig(mu1=26e9, mu2=82e9, h1=0.1, h2=0.05,
                       kappa=resin_compliance(0.01, 2.5e9 * resin_scale))


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class StripSpec:
    """Exactly one of ``physical`` or ``dimensionless``.

    ``mu_total`` (Pa) fixes the absolute modulus when the strip is given by
    its contrasts; it is ignored for physical input.
    """

    physical: StripConfig | None = None
    dimensionless: DimensionlessParams | None = None
    mu_total: float = 2.0

    def __post_init__(self):
        if (self.physical is None) == (self.dimensionless is None):
            raise ConfigError("exactly one of 'physical' or 'dimensionless' is required",
                              field="strip")

    def config(self) -> StripConfig:
        if self.physical is not None:
            return self.physical
        return dimensionalize(self.dimensionless, mu_total=self.mu_total)

    def params(self) -> DimensionlessParams:
        if self.dimensionless is not None:
            return self.dimensionless
        return nondimensionalize(self.physical)

    def to_dict(self) -> dict:
        if self.physical is not None:
            return {"physical": self.physical.to_dict()}
        d = self.dimensionless
        return {"dimensionless": {"h_star": d.h_star, "mu_star": d.mu_star,
                                  "kappa_star": d.kappa_star, "h_total": d.h_total,
                                  "mu_total": self.mu_total}}


@dataclass(frozen=True)
class SweepSpec:
    """Grid over ``(mu*, H*)`` for each ``kappa*``.

    The grid is ``linspace(-limit, limit, n)`` in both contrasts.  It must
    stay ``margin`` away from the degenerate values +/-1.
    """

    kappa_stars: tuple = (100.0, 1.0, 0.01)
    n_mu: int = 41
    n_h: int = 41
    limit: float = 0.96
    margin: float = 0.02
    alpha_p_form: str = "corrected"

    def __post_init__(self):
        object.__setattr__(self, "kappa_stars", tuple(float(k) for k in self.kappa_stars))
        if self.limit > 1.0 - self.margin + 1e-15:
            raise ConfigError(f"grid limit {self.limit} is closer than margin {self.margin} "
                              "to the degenerate contrast 1", field="sweep.limit")
        if any(not (k > 0 and math.isfinite(k)) for k in self.kappa_stars):
            raise ConfigError("kappa_star values must be positive and finite",
                              field="sweep.kappa_stars")

    def axes(self):
        """``(mu_values, h_values)`` of the grid."""
        mu = np.linspace(-self.limit, self.limit, self.n_mu) if self.n_mu > 1 else np.zeros(1)
        h = np.linspace(-self.limit, self.limit, self.n_h) if self.n_h > 1 else np.zeros(1)
        return mu, h

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kappa_stars"] = list(self.kappa_stars)
        return d


@dataclass(frozen=True)
class FieldSpec:
    """Points at which the field command evaluates ``Y_j``."""

    component: int = 1
    quantity: str = "value"
    x: tuple | None = None
    y: tuple | None = None
    points: tuple | None = None

    def grid(self, cfg: StripConfig) -> np.ndarray:
        """``(n, 2)`` array of points; defaults to a coarse grid of the layer."""
        if self.points is not None:
            return np.asarray(self.points, dtype=float).reshape(-1, 2)
        H = cfg.h_total
        x = self.x or (-3.0 * H, 3.0 * H, 25)
        if self.y is not None:
            y = self.y
        elif self.component == 1:
            y = (0.25 * cfg.h1, cfg.h1, 4)
        else:
            y = (-cfg.h2, -0.25 * cfg.h2, 4)
        xs = np.linspace(x[0], x[1], int(x[2]))
        ys = np.linspace(y[0], y[1], int(y[2]))
        X, Y = np.meshgrid(xs, ys, indexing="xy")
        return np.column_stack([X.ravel(), Y.ravel()])

    def to_dict(self) -> dict:
        d = {"component": self.component, "quantity": self.quantity}
        for name in ("x", "y"):
            r = getattr(self, name)
            if r is not None:
                d[name] = {"start": r[0], "stop": r[1], "num": r[2]}
        if self.points is not None:
            d["points"] = [list(p) for p in self.points]
        return d


@dataclass(frozen=True)
class VerifySpec:
    n_configs: int = 20
    n_points: int = 200
    lambda_factor: float = 1.0


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run description."""

    strip: StripSpec
    mode: str = "constants"
    sweep: SweepSpec = field(default_factory=SweepSpec)
    field_spec: FieldSpec = field(default_factory=FieldSpec)
    verify: VerifySpec = field(default_factory=VerifySpec)
    factorization: FactorizationSettings = field(default_factory=FactorizationSettings)
    field_settings: FieldSettings = field(default_factory=FieldSettings)
    output_path: str | None = None
    output_format: str | None = None
    seed: int = 0
    threads: int = 1

    def to_dict(self) -> dict:
        """Canonical JSON-compatible form with all defaults written out."""
        return {
            "schema_version": 1,
            "mode": self.mode,
            "strip": self.strip.to_dict(),
            "sweep": self.sweep.to_dict(),
            "field": self.field_spec.to_dict(),
            "verify": asdict(self.verify),
            "numerics": {"factorization": asdict(self.factorization),
                         "field": asdict(self.field_settings)},
            "output": {"path": self.output_path, "format": self.output_format},
            "seed": self.seed,
            "threads": self.threads,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def replace(self, **kw) -> "RunConfig":
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d.update(kw)
        return RunConfig(**d)


def config_hash(cfg: RunConfig, exclude_runtime: bool = True) -> str:
    """SHA-256 of the canonical configuration.

    With ``exclude_runtime`` the thread count and output location are left
    out, so they do not change the digest of otherwise identical runs.
    """
    d = cfg.to_dict()
    if exclude_runtime:
        d.pop("threads")
        d.pop("output")
    blob = json.dumps(d, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# parsing


def _path(err) -> str:
    return ".".join(str(p) for p in err.absolute_path) or "<root>"


def parse_config(data: dict) -> RunConfig:
    """Validate ``data`` against the schema and build a :class:`RunConfig`.

    Raises
    ------
    ConfigError
        With the dotted path of the offending field.
    """
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ConfigError(e.message, field=_path(e))
    try:
        return _build(data)
    except ConfigError:
        raise
    except (StripError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc), field="strip") from exc


def _build(data: dict) -> RunConfig:
    s = data["strip"]
    if "physical" in s:
        p = s["physical"]
        strip = StripSpec(physical=StripConfig(p["mu1"], p["mu2"], p["h1"], p["h2"], p["kappa"]))
    else:
        d = s["dimensionless"]
        strip = StripSpec(dimensionless=DimensionlessParams(
            d["h_star"], d["mu_star"], d["kappa_star"], d.get("h_total", 1.0)),
            mu_total=float(d.get("mu_total", 2.0)))

    sw = data.get("sweep", {})
    sweep = SweepSpec(**sw)

    fs = data.get("field", {})
    rng = {k: (fs[k]["start"], fs[k]["stop"], fs[k]["num"]) for k in ("x", "y") if k in fs}
    points = tuple(tuple(float(v) for v in p) for p in fs["points"]) if "points" in fs else None
    fspec = FieldSpec(component=fs.get("component", 1), quantity=fs.get("quantity", "value"),
                      x=rng.get("x"), y=rng.get("y"), points=points)

    verify = VerifySpec(**data.get("verify", {}))
    num = data.get("numerics", {})
    try:
        fact = FactorizationSettings(**num.get("factorization", {}))
    except StripError as exc:
        raise ConfigError(str(exc), field="numerics.factorization") from exc
    try:
        fset = FieldSettings(**num.get("field", {}))
    except StripError as exc:
        raise ConfigError(str(exc), field="numerics.field") from exc
    out = data.get("output", {})
    return RunConfig(strip=strip, mode=data.get("mode", "constants"), sweep=sweep,
                     field_spec=fspec, verify=verify, factorization=fact, field_settings=fset,
                     output_path=out.get("path"), output_format=out.get("format"),
                     seed=data.get("seed", 0), threads=data.get("threads", 1))


def load_config(path) -> RunConfig:
    """Read and validate a configuration file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(data)


def default_config() -> RunConfig:
    """Symmetric unit cell: ``mu1 = mu2 = 1 Pa``, ``h1 = h2 = 0.5 m``, ``kappa* = 1``."""
    return RunConfig(strip=StripSpec(dimensionless=DimensionlessParams(0.0, 0.0, 1.0)))
