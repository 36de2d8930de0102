"""Parameter sweeps over the contrasts ``(mu*, H*)`` and ``kappa*``.

Each row holds ``alpha*``, ``alpha_I``, ``alpha_P``, their ratio, ``lam*`` and
``gamma_+ H`` for one grid point.  Rows are produced by a process pool but
written by the parent alone, in the fixed order ``kappa*`` (outer), ``H*``
(middle), ``mu*`` (inner).  Floats are written with ``repr`` and the header
carries only the tool version and the configuration digest, so repeated
runs produce byte-identical files.

An interrupted sweep resumes from the last complete row when rerun with
the same output path and configuration.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Iterable, Iterator

from .constants import alpha_perfect, alpha_star_dimensionless, gamma_plus
from .errors import ConfigError, StripError
from .kernel import DimensionlessParams, dimensionalize
from .settings import FactorizationSettings

logger = logging.getLogger(__name__)

__all__ = ["SweepRecord", "COLUMNS", "sweep_points", "compute_record", "run_sweep"]

# |alpha_P| below this is treated as a zero crossing: the ratio is left blank
ALPHA_P_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sweep.

    Numeric fields are ``None`` when the row failed or, for ``ratio``, when
    ``alpha_P`` is numerically zero; ``diagnostics`` says which.
    """

    kappa_star: float
    h_star: float
    mu_star: float
    alpha_star: float | None
    alpha_I: float | None
    alpha_P: float | None
    ratio: float | None
    lambda_star: float | None
    gamma_plus_H: float | None
    diagnostics: str = ""

    def as_row(self) -> list:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                out.append("")
            elif isinstance(v, float):
                out.append(repr(v))
            else:
                out.append(v)
        return out


COLUMNS = [f.name for f in fields(SweepRecord)]


def sweep_points(kappa_stars: Iterable[float], mu_values, h_values) -> Iterator[tuple]:
    """Yield ``(kappa*, H*, mu*)`` in the canonical row order."""
    for k in kappa_stars:
        for h in h_values:
            for m in mu_values:
                yield float(k), float(h), float(m)


def compute_record(point: tuple, settings: FactorizationSettings,
                   alpha_p_form: str = "corrected") -> SweepRecord:
    """Evaluate one grid point; never raises for numerical trouble."""
    k, h, m = point
    try:
        dp = DimensionlessParams(h, m, k)
        a_star = alpha_star_dimensionless(dp, settings)
        a_i = -(a_star / math.pi + 1.0 / dp.lambda_star)  # same as alpha_imperfect
        a_p = alpha_perfect(dp, form=alpha_p_form)
        gp_h = gamma_plus(dimensionalize(dp))
        diag = ""
        if abs(a_p) < ALPHA_P_ZERO_TOL:
            ratio = None
            diag = "alpha_P~0: ratio omitted"
        else:
            ratio = a_i / a_p
        vals = (a_star, a_i, a_p, ratio, dp.lambda_star, gp_h)
        if not all(v is None or math.isfinite(v) for v in vals):
            raise ArithmeticError("non-finite value")
        return SweepRecord(k, h, m, *[None if v is None else float(v) for v in vals],
                           diagnostics=diag)
    except (StripError, ArithmeticError, ValueError) as exc:
        logger.warning("row (kappa*=%g, H*=%g, mu*=%g) failed: %s", k, h, m, exc)
        msg = f"error: {type(exc).__name__}: {exc}".replace("\n", " ")
        return SweepRecord(k, h, m, None, None, None, None, None, None, diagnostics=msg)


def _worker(args):
    point, settings, form = args
    return compute_record(point, settings, form)


def _header_lines(version: str, digest: str) -> list[str]:
    return [f"# imperfect_strip {version} sweep", f"# config_sha256 {digest}"]


def _completed_rows(path: str, header: list[str]) -> int | None:
    """Number of complete data rows of a compatible partial file.

    Returns ``None`` when the file is missing or belongs to another run.
    A trailing partial line is truncated away.
    """
    if not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        data = fh.read()
    complete = data.rfind(b"\n") + 1
    lines = data[:complete].decode("utf-8", errors="replace").split("\n")[:-1]
    expected = header + [",".join(COLUMNS)]
    if lines[:len(expected)] != expected:
        return None
    if complete < len(data):
        with open(path, "r+b") as fh:
            fh.truncate(complete)
    return len(lines) - len(expected)


def run_sweep(kappa_stars, mu_values, h_values, out_path: str | None, *,
              settings: FactorizationSettings | None = None, alpha_p_form: str = "corrected",
              threads: int = 1, version: str = "0", digest: str = "", resume: bool = True,
              chunksize: int = 8) -> str | None:
    """Compute the sweep and write it as CSV.

    Parameters
    ----------
    kappa_stars, mu_values, h_values : sequences of float
    out_path : str or None
        Output file.  ``None`` returns the CSV text instead of writing it.
    settings : FactorizationSettings, optional
    alpha_p_form : {"corrected", "printed"}
    threads : int
        Worker processes; 1 computes in-process.
    version, digest : str
        Written into the ``#`` header.
    resume : bool
        Continue a compatible partial file instead of starting over.

    Returns
    -------
    str or None
        The CSV text when ``out_path`` is None.
    """
    settings = settings or FactorizationSettings()
    if threads < 1:
        raise ConfigError("threads must be >= 1", field="threads")
    points = list(sweep_points(kappa_stars, mu_values, h_values))
    header = _header_lines(version, digest)

    done = 0
    if out_path is not None and resume:
        done = _completed_rows(out_path, header) or 0
        if done:
            logger.info("resuming %s after %d of %d rows", out_path, done, len(points))
    if out_path is None:
        sink = io.StringIO()
    elif done:
        sink = open(out_path, "a", newline="")
    else:
        sink = open(out_path, "w", newline="")
    try:
        writer = csv.writer(sink, lineterminator="\n")
        if not done:
            for line in header:
                sink.write(line + "\n")
            writer.writerow(COLUMNS)
        todo = [(p, settings, alpha_p_form) for p in points[done:]]
        if threads == 1:
            results = map(_worker, todo)
            pool = None
        else:
            pool = ProcessPoolExecutor(max_workers=threads)
            results = pool.map(_worker, todo, chunksize=chunksize)
        try:
            for i, rec in enumerate(results, start=done + 1):
                writer.writerow(rec.as_row())
                sink.flush()  # checkpoint: every written row is complete
                if i % 500 == 0:
                    logger.info("sweep: %d/%d rows", i, len(points))
        finally:
            if pool is not None:
                pool.shutdown()
        if out_path is None:
            return sink.getvalue()
        return None
    finally:
        if out_path is not None:
            sink.close()


def read_sweep(path_or_text: str) -> list[dict]:
    """Parse a sweep CSV (path or text) into dicts, skipping ``#`` lines."""
    if "\n" in path_or_text:
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    rows = [ln for ln in text.splitlines() if not ln.startswith("#")]
    out = []
    for r in csv.DictReader(rows):
        rec = {}
        for k, v in r.items():
            if k == "diagnostics":
                rec[k] = v
            else:
                rec[k] = float(v) if v != "" else None
        out.append(rec)
    return out
