"""Parameter sweeps over scale, precision, or exponent range.

Each sweep point evaluates the exact discrete entropy, both analytic
approximations, and the out-of-range masses for one (distribution,
format) pair.  Results serialize to a CSV with a `#`-prefixed metadata
block followed by a fixed header; floats are written with repr so the
file round-trips bit-exactly and rewrites are byte-identical.

Set FPENTROPY_WORKERS to evaluate points in a thread pool; row order is
the sweep order regardless of worker count.
"""

from __future__ import annotations

import csv
import importlib.metadata
import io
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import NamedTuple

import numpy as np

from .distributions import parse_distribution
from .entropy import (
    approx_entropy_smooth,
    approx_entropy_tilde,
    exact_entropy,
    overflow_mass,
    underflow_mass,
)
from .formats import FpFormat

__all__ = [
    "SweepSpec",
    "SweepPoint",
    "SweepResult",
    "run_sweep",
    "run_multi_sweep",
    "sweep_csv_text",
    "sweep_to_csv",
]

try:
    _VERSION = importlib.metadata.version("fpentropy")
except importlib.metadata.PackageNotFoundError:
    _VERSION = "unknown"

SWEEP_MODES = ("scale", "precision", "exponent")

CSV_COLUMNS = (
    "dist",
    "swept_value",
    "exact_bits",
    "approx_tilde_bits",
    "approx_smooth_bits",
    "p_overflow",
    "p_underflow",
)


@dataclass(frozen=True)
class SweepSpec:
    dist: str
    mode: str
    precision: int
    exponent_bits: int
    lo: float
    hi: float
    num_points: int = 0  # scale mode only; integer modes use the range

    def __post_init__(self) -> None:
        if self.mode not in SWEEP_MODES:
            raise ValueError(
                f"mode must be one of {SWEEP_MODES}, got {self.mode!r}"
            )
        parse_distribution(self.dist)  # validate early
        if self.mode == "scale":
            if not (0.0 < self.lo <= self.hi):
                raise ValueError(
                    f"scale range must satisfy 0 < lo <= hi, got [{self.lo}, {self.hi}]"
                )
            if self.num_points < 1:
                raise ValueError(
                    f"scale mode needs num_points >= 1, got {self.num_points}"
                )
            FpFormat(self.precision, self.exponent_bits)
        else:
            lo, hi = int(self.lo), int(self.hi)
            if (lo, hi) != (self.lo, self.hi) or lo > hi:
                raise ValueError(
                    f"{self.mode} range must be integers with lo <= hi, "
                    f"got [{self.lo}, {self.hi}]"
                )
            # every format in the range must be constructible
            for v in (lo, hi):
                if self.mode == "precision":
                    FpFormat(v, self.exponent_bits)
                else:
                    FpFormat(self.precision, v)

    def points(self) -> list[float]:
        if self.mode == "scale":
            if self.num_points == 1:
                return [float(self.lo)]
            return [float(v) for v in np.geomspace(self.lo, self.hi, self.num_points)]
        return [float(v) for v in range(int(self.lo), int(self.hi) + 1)]


class SweepPoint(NamedTuple):
    dist: str
    swept_value: float
    exact_bits: float
    approx_tilde_bits: float
    approx_smooth_bits: float
    p_overflow: float
    p_underflow: float


@dataclass(frozen=True)
class SweepResult:
    specs: list[SweepSpec]
    rows: list[SweepPoint]

    @property
    def spec(self) -> SweepSpec:
        return self.specs[0]


def _evaluate_point(spec: SweepSpec, value: float) -> SweepPoint:
    base = parse_distribution(spec.dist)
    if spec.mode == "scale":
        dist = base.with_scale(value)
        fmt = FpFormat(spec.precision, spec.exponent_bits)
    elif spec.mode == "precision":
        dist = base
        fmt = FpFormat(int(value), spec.exponent_bits)
    else:
        dist = base
        fmt = FpFormat(spec.precision, int(value))
    return SweepPoint(
        dist=dist.spec_string(),
        swept_value=value,
        exact_bits=exact_entropy(dist, fmt),
        approx_tilde_bits=approx_entropy_tilde(dist, fmt),
        approx_smooth_bits=approx_entropy_smooth(dist, fmt),
        p_overflow=overflow_mass(dist, fmt),
        p_underflow=underflow_mass(dist, fmt),
    )


def run_sweep(spec: SweepSpec) -> SweepResult:
    return run_multi_sweep([spec])


def run_multi_sweep(specs: list[SweepSpec]) -> SweepResult:
    """Evaluate several distributions over one shared sweep axis; rows are
    grouped by distribution in input order."""
    if not specs:
        raise ValueError("at least one sweep spec is required")
    first = specs[0]
    for s in specs[1:]:
        if (s.mode, s.precision, s.exponent_bits, s.lo, s.hi, s.num_points) != (
            first.mode,
            first.precision,
            first.exponent_bits,
            first.lo,
            first.hi,
            first.num_points,
        ):
            raise ValueError(
                "multi-distribution sweeps must share mode, format and range"
            )
    tasks = [(s, v) for s in specs for v in s.points()]
    workers = int(os.environ.get("FPENTROPY_WORKERS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda sv: _evaluate_point(*sv), tasks))
    else:
        rows = [_evaluate_point(s, v) for s, v in tasks]
    return SweepResult(specs=list(specs), rows=rows)


def _field(v: float | str) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def sweep_csv_text(result: SweepResult) -> str:
    spec = result.spec
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    buf = io.StringIO()
    for line in (
        f"# version={_VERSION}",
        f"# generated={stamp}",
        f"# mode={spec.mode}",
        f"# dist={';'.join(s.dist for s in result.specs)}",
        f"# precision={spec.precision}",
        f"# exponent_bits={spec.exponent_bits}",
        f"# range=[{_field(spec.lo)}, {_field(spec.hi)}]",
        f"# points={len(result.rows)}",
    ):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in result.rows:
        writer.writerow([_field(v) for v in row])
    return buf.getvalue()


def sweep_to_csv(result: SweepResult, path: str) -> None:
    """Write atomically: a reader never sees a partial file."""
    text = sweep_csv_text(result)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
