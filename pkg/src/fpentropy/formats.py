"""Idealized binary floating-point formats and their quantization geometry.

A format has a precision p >= 1 (p - 1 explicit mantissa bits) and E >= 1
exponent bits spanning e in [e_min, e_max] with e_min = -(2**(E-1) - 1) and
e_max = 2**(E-1).  There is no zero, no subnormal range, and no infinities:
the representable values are

    u = s * 2**e * (1 + m),   s in {-1, +1},  m in {0, 1/2**(p-1), ..., 1 - 1/2**(p-1)}

giving K = 2**(E+p) values in total.  Quantization is round-to-nearest with
ties broken toward the higher mantissa index, i.e. away from zero.  Inputs
with |x| >= 2**(e_max+1) clip to the largest-magnitude value; the granular
range ends at G = 2**(e_max+1) - 2**(e_max-p), the right edge of the
clipping bin.

Everything here is exact in float64: values, bin edges and widths are dyadic
rationals with short mantissas, built via ldexp and integer arithmetic, and
the rounding decision itself is an integer floor.  That is why exponent
fields are capped at E <= 10; see FpFormat.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

__all__ = [
    "FpFormat",
    "FpValue",
    "Grid",
    "Bin",
    "BinKind",
    "Region",
    "build_grid",
    "round_p",
    "encode",
    "bin_size",
    "smooth_bin_size",
    "classify",
    "quantize_indices",
    "positive_log_width_segments",
]

# Hard cap on grid size for materialized grids: 2**30 values.
_MAX_GRID_VALUES = 1 << 30


@dataclass(frozen=True)
class FpFormat:
    """An idealized float format: p total mantissa bits, E exponent bits."""

    precision: int
    exponent_bits: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        if self.exponent_bits < 1:
            raise ValueError(
                f"exponent_bits must be >= 1, got {self.exponent_bits}"
            )
        # e_max <= 1024 keeps every value, edge and width exact in float64.
        if self.exponent_bits > 10:
            raise ValueError(
                f"exponent_bits must be <= 10, got {self.exponent_bits}"
            )
        if self.precision + self.exponent_bits > 30:
            raise ValueError(
                "format too large: 2**(E+p) values exceeds the 2**30 cap"
            )

    @property
    def e_min(self) -> int:
        return -((1 << (self.exponent_bits - 1)) - 1)

    @property
    def e_max(self) -> int:
        return 1 << (self.exponent_bits - 1)

    @property
    def num_values(self) -> int:
        """K = 2**(E+p), both signs."""
        return 1 << (self.exponent_bits + self.precision)

    @property
    def mantissa_steps(self) -> int:
        """Representable mantissas per exponent block: 2**(p-1)."""
        return 1 << (self.precision - 1)

    @property
    def mantissa_step(self) -> float:
        return 1.0 / self.mantissa_steps

    @property
    def max_mantissa(self) -> float:
        return (self.mantissa_steps - 1) / self.mantissa_steps

    @property
    def smallest_positive(self) -> float:
        return math.ldexp(1.0, self.e_min)

    @property
    def largest_positive(self) -> float:
        return math.ldexp(1.0 + self.max_mantissa, self.e_max)

    @property
    def granular_bound(self) -> float:
        """G = 2**(e_max+1) - 2**(e_max-p), right edge of the clipping bin."""
        return math.ldexp(2.0 - math.ldexp(1.0, -self.precision), self.e_max)

    @property
    def central_edge(self) -> float:
        """Right edge of the central bin: 2**e_min * (1 + 2**-p)."""
        return math.ldexp(1.0 + math.ldexp(1.0, -self.precision), self.e_min)

    @property
    def clipping_edge(self) -> float:
        """Left edge of the outermost (clipping) bin."""
        p = self.precision
        if p == 1:
            return math.ldexp(3.0, self.e_max - 2)
        return math.ldexp(2.0 - math.ldexp(3.0, -p), self.e_max)

    def __str__(self) -> str:
        return f"p{self.precision}e{self.exponent_bits}"


class FpValue(NamedTuple):
    """Sign/exponent/mantissa triple; all fields exact."""

    sign: int
    exponent: int
    mantissa: float

    @property
    def value(self) -> float:
        return self.sign * math.ldexp(1.0 + self.mantissa, self.exponent)


class Region(enum.Enum):
    UNDERFLOW = "underflow"
    GRANULAR = "granular"
    OVERFLOW = "overflow"


class BinKind(enum.Enum):
    CENTRAL = "central"      # adjacent to zero, contains the underflow range
    INTERIOR = "interior"    # both neighbors share the exponent block
    BOUNDARY = "boundary"    # straddles a power of two
    CLIPPING = "clipping"    # outermost, absorbs the overflow tail


class Bin(NamedTuple):
    index: int
    value: float
    lower: float
    upper: float
    kind: BinKind

    @property
    def width(self) -> float:
        return self.upper - self.lower


def round_p(alpha: float, p: int) -> float:
    """Round alpha to the nearest multiple of 2**-(p-1) in [0, 1].

    Ties go to the higher index.  floor(x + 0.5) is exact for the dyadic
    ties that can occur here, unlike round(), which would go to even.
    """
    if p < 1:
        raise ValueError(f"precision must be >= 1, got {p}")
    steps = 1 << (p - 1)
    i = math.floor(alpha * steps + 0.5)
    i = min(max(i, 0), steps)
    return i / steps


def encode(x: float, fmt: FpFormat) -> FpValue:
    """Quantize a real to the nearest representable value.

    Ties round toward the higher mantissa index (away from zero).  Inputs
    with |x| >= 2**(e_max+1) clip to the largest-magnitude value.  x = 0
    and non-finite x are rejected: the format has no zero and no infinities.
    """
    if not math.isfinite(x):
        raise ValueError(f"cannot encode non-finite input {x!r}")
    if x == 0.0:
        raise ValueError("cannot encode 0: the format has no zero")
    sign = -1 if x < 0.0 else 1
    ax = abs(x)
    frac, ex = math.frexp(ax)          # ax = frac * 2**ex, frac in [0.5, 1)
    e_floor = ex - 1                   # floor(log2 ax), exactly
    if e_floor > fmt.e_max:
        return FpValue(sign, fmt.e_max, fmt.max_mantissa)
    e = min(max(e_floor, fmt.e_min), fmt.e_max)
    alpha = math.ldexp(ax, -e) - 1.0   # exact for e == e_floor; sign of the
    steps = fmt.mantissa_steps         # rounding decision exact otherwise
    i = math.floor(alpha * steps + 0.5)
    if i < 0:
        i = 0
    if i >= steps:                     # mantissa rollover into the next block
        if e < fmt.e_max:
            return FpValue(sign, e + 1, 0.0)
        return FpValue(sign, fmt.e_max, fmt.max_mantissa)
    return FpValue(sign, e, i / steps)


def classify(x: float, fmt: FpFormat) -> Region:
    """Underflow range S = [-2**e_min, 2**e_min], overflow |x| > G."""
    if not math.isfinite(x):
        raise ValueError(f"cannot classify non-finite input {x!r}")
    ax = abs(x)
    if ax <= fmt.smallest_positive:
        return Region.UNDERFLOW
    if ax > fmt.granular_bound:
        return Region.OVERFLOW
    return Region.GRANULAR


def bin_size(x: float, fmt: FpFormat) -> float:
    """Width of the quantization bin containing x.

    Defined on 0 < |x| <= G.  x = 0 sits on the shared edge of the two
    central bins and is rejected, as is the overflow region where the bin
    is unbounded.
    """
    if not math.isfinite(x):
        raise ValueError(f"bin_size is undefined for non-finite input {x!r}")
    if x == 0.0:
        raise ValueError("bin_size is undefined at 0")
    ax = abs(x)
    if ax > fmt.granular_bound:
        raise ValueError(
            f"bin_size is undefined beyond the granular bound: |x| = {ax} > {fmt.granular_bound}"
        )
    if ax < fmt.central_edge:
        return fmt.central_edge
    a_k = fmt.clipping_edge
    if ax >= a_k:
        return fmt.granular_bound - a_k
    p = fmt.precision
    frac, ex = math.frexp(ax)
    e = ex - 1
    if ax < math.ldexp(1.0 + math.ldexp(1.0, -p), e):
        return math.ldexp(3.0, e - 1 - p)        # boundary bin around 2**e
    if ax >= math.ldexp(2.0 - math.ldexp(1.0, -p), e):
        return math.ldexp(3.0, e - p)            # boundary bin around 2**(e+1)
    return math.ldexp(1.0, e - (p - 1))          # interior of block e


def smooth_bin_size(x: float, fmt: FpFormat) -> float:
    """Smooth proxy for bin_size: (|x| / sqrt(2)) * 2**(1-p), any x != 0."""
    if x == 0.0:
        raise ValueError("smooth_bin_size is undefined at 0")
    return math.ldexp(abs(x) / math.sqrt(2.0), 1 - fmt.precision)


# ── materialized grids ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class Grid:
    """All K representable values with their bin edges.

    Values are stored as (sign, exponent, integer mantissa index) and
    expanded to float64 on demand; with E <= 10 the expansion and the
    midpoint edges are exact.  Bin i is [lower[i], upper[i]), mirrored to
    (lower[i], upper[i]] on the negative axis so that edge membership
    agrees with encode()'s away-from-zero ties; every probabilistic
    quantity downstream is insensitive to edge membership.
    """

    fmt: FpFormat
    signs: np.ndarray       # int8, -1 or +1
    exponents: np.ndarray   # int32
    mantissa_idx: np.ndarray  # int64 in [0, 2**(p-1))

    def __len__(self) -> int:
        return self.fmt.num_values

    @cached_property
    def values(self) -> np.ndarray:
        steps = self.fmt.mantissa_steps
        mant = (steps + self.mantissa_idx).astype(np.float64)
        vals = self.signs * np.ldexp(
            mant, self.exponents - (self.fmt.precision - 1)
        )
        vals.flags.writeable = False
        return vals

    @cached_property
    def lower(self) -> np.ndarray:
        v = self.values
        edges = np.empty(len(v), dtype=np.float64)
        edges[1:] = 0.5 * (v[:-1] + v[1:])
        edges[0] = -self.fmt.granular_bound
        edges.flags.writeable = False
        return edges

    @cached_property
    def upper(self) -> np.ndarray:
        v = self.values
        edges = np.empty(len(v), dtype=np.float64)
        edges[:-1] = 0.5 * (v[:-1] + v[1:])
        edges[-1] = self.fmt.granular_bound
        edges.flags.writeable = False
        return edges

    @cached_property
    def widths(self) -> np.ndarray:
        w = self.upper - self.lower
        w.flags.writeable = False
        return w

    def kind_of(self, index: int) -> BinKind:
        k = len(self)
        if index < 0 or index >= k:
            raise IndexError(f"bin index {index} out of range [0, {k})")
        half = k // 2
        if index in (0, k - 1):
            return BinKind.CLIPPING
        if index in (half - 1, half):
            return BinKind.CENTRAL
        if self.mantissa_idx[index] == 0:
            return BinKind.BOUNDARY
        return BinKind.INTERIOR

    def bins(self) -> Iterator[Bin]:
        v, lo, up = self.values, self.lower, self.upper
        for i in range(len(self)):
            yield Bin(i, float(v[i]), float(lo[i]), float(up[i]), self.kind_of(i))

    def index_of(self, x: float) -> int:
        """Grid index of encode(x); edge ties resolve away from zero."""
        fv = encode(x, self.fmt)
        steps = self.fmt.mantissa_steps
        pos = (fv.exponent - self.fmt.e_min) * steps + round(fv.mantissa * steps)
        half = len(self) // 2
        return half + pos if fv.sign > 0 else half - 1 - pos


def build_grid(fmt: FpFormat) -> Grid:
    if fmt.num_values > _MAX_GRID_VALUES:
        raise ValueError(
            f"grid of {fmt.num_values} values exceeds the 2**30 cap"
        )
    steps = fmt.mantissa_steps
    half = fmt.num_values // 2
    i = np.arange(half, dtype=np.int64)
    exp_pos = (i // steps).astype(np.int32) + np.int32(fmt.e_min)
    man_pos = i % steps
    signs = np.concatenate(
        [np.full(half, -1, dtype=np.int8), np.ones(half, dtype=np.int8)]
    )
    exponents = np.concatenate([exp_pos[::-1], exp_pos])
    mantissa_idx = np.concatenate([man_pos[::-1], man_pos])
    for arr in (signs, exponents, mantissa_idx):
        arr.flags.writeable = False
    return Grid(fmt, signs, exponents, mantissa_idx)


def quantize_indices(x: np.ndarray, fmt: FpFormat) -> np.ndarray:
    """Vectorized encode: grid indices (0-based over all K values) for x.

    Mirrors encode() exactly, including tie direction, rollover and
    clipping.  Rejects zeros and non-finite entries.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot encode non-finite inputs")
    ax = np.abs(x)
    if np.any(ax == 0.0):
        raise ValueError("cannot encode 0: the format has no zero")
    steps = fmt.mantissa_steps
    _, ex = np.frexp(ax)
    e_floor = ex.astype(np.int64) - 1
    e = np.clip(e_floor, fmt.e_min, fmt.e_max)
    over = e_floor > fmt.e_max
    alpha = np.ldexp(ax, -e.astype(np.int32)) - 1.0
    alpha = np.where(over, 0.0, alpha)  # overflow entries are rewritten below
    i = np.floor(alpha * steps + 0.5).astype(np.int64)
    np.clip(i, 0, steps, out=i)
    promote = (i == steps) & (e < fmt.e_max)
    e = np.where(promote, e + 1, e)
    i = np.where(promote, 0, np.minimum(i, steps - 1))
    e = np.where(over, fmt.e_max, e)
    i = np.where(over, steps - 1, i)
    pos = (e - fmt.e_min) * steps + i
    half = fmt.num_values // 2
    return np.where(x > 0.0, half + pos, half - 1 - pos)


def positive_log_width_segments(
    fmt: FpFormat,
) -> list[tuple[float, float, float]]:
    """Positive-axis segments of constant log2(bin width).

    Returns (lo, hi, log2_width) triples covering (0, inf); hi = inf on the
    last segment, whose width is the finite clipping-bin width even though
    the segment absorbs the overflow tail.  Mirroring to the negative axis
    is the caller's job.  The segment count is O(2**E), which is what makes
    exact expected-log-width computations cheap for wide formats.
    """
    p, e_min, e_max = fmt.precision, fmt.e_min, fmt.e_max
    segs: list[tuple[float, float, float]] = []
    segs.append((0.0, fmt.central_edge, math.log2(fmt.central_edge)))
    a_k = fmt.clipping_edge
    for e in range(e_min, e_max + 1):
        # interior span of block e (empty for p = 1)
        if p >= 2:
            lo = math.ldexp(1.0 + math.ldexp(1.0, -p), e)
            hi = a_k if e == e_max else math.ldexp(
                2.0 - math.ldexp(1.0, -p), e
            )
            if hi > lo:
                segs.append((lo, hi, float(e - (p - 1))))
        # boundary bin around 2**(e+1)
        e_b = e + 1
        if e_b <= e_max and not (p == 1 and e_b == e_max):
            lo = math.ldexp(2.0 - math.ldexp(1.0, -p), e)
            hi = math.ldexp(1.0 + math.ldexp(1.0, -p), e_b)
            segs.append((lo, hi, math.log2(3.0) + e_b - p - 1))
    w_clip = fmt.granular_bound - a_k
    segs.append((a_k, math.inf, math.log2(w_clip)))
    return segs
