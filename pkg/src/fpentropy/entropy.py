"""Exact and approximate discrete entropy of quantized random variables.

The quantizer maps all of R onto K values, so bin masses here are preimage
masses: the two outermost bins absorb their overflow tails and the two
central bins share the underflow range.  With that convention the identity

    H(X_fp) = h(X) - E[log2 Delta(X)] + D

holds exactly for every distribution, where Delta is the (finite) width of
the containing bin, E[log2 Delta] is taken with tail mass attributed to
the outermost widths, and D is the divergence computed in the bounds
module over the same preimages.

Two independent routes compute E[log2 Delta]: a per-bin sum over the
materialized grid, and a block-analytic sum over O(2**E) constant-width
segments that needs no grid at all.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, MultivariateGaussian
from .formats import FpFormat, Grid, build_grid, positive_log_width_segments

__all__ = [
    "MASS_FLOOR",
    "EntropyReport",
    "bin_masses",
    "entropy_from_masses",
    "exact_entropy",
    "expected_log2_bin_size",
    "expected_log2_bin_size_per_bin",
    "approx_entropy_tilde",
    "approx_entropy_smooth",
    "smooth_entropy_closed_form",
    "overflow_mass",
    "underflow_mass",
    "full_report",
    "mvg_smooth_entropy",
    "mvg_smooth_entropy_marginal_form",
]

# masses at or below this cannot influence any reported digit and would
# only inject log-of-denormal noise
MASS_FLOOR = 1e-300

_LOG2E = math.log2(math.e)
_EULER = 0.5772156649015329


def bin_masses(dist: Distribution, grid: Grid) -> np.ndarray:
    """Preimage mass of every bin; the edge bins include their tails."""
    lo, up = grid.lower, grid.upper
    k = len(grid)
    m = np.empty(k, dtype=np.float64)
    m[0] = dist.cdf(up[0])
    for i in range(1, k - 1):
        m[i] = dist.interval_mass(lo[i], up[i])
    m[k - 1] = dist.sf(lo[k - 1])
    return m


def entropy_from_masses(masses: np.ndarray) -> float:
    m = np.asarray(masses, dtype=np.float64)
    m = m[m > MASS_FLOOR]
    if m.size == 0:
        return 0.0
    return -math.fsum((m * np.log2(m)).tolist())


def exact_entropy(
    dist: Distribution, fmt: FpFormat, *, grid: Grid | None = None
) -> float:
    """Discrete entropy H(X_fp) in bits."""
    grid = grid if grid is not None else build_grid(fmt)
    return entropy_from_masses(bin_masses(dist, grid))


def expected_log2_bin_size(dist: Distribution, fmt: FpFormat) -> float:
    """E[log2 Delta(X)] using O(2**E) constant-log-width segments.

    Tail mass counts toward the outermost (clipping) bin widths and the
    underflow range toward the central width, matching the preimage
    convention of bin_masses.
    """
    terms: list[float] = []
    for lo, hi, logw in positive_log_width_segments(fmt):
        if math.isinf(hi):
            mass = dist.sf(lo) + dist.cdf(-lo)
        else:
            mass = dist.interval_mass(lo, hi) + dist.interval_mass(-hi, -lo)
        if mass > 0.0:
            terms.append(mass * logw)
    return math.fsum(terms)


def expected_log2_bin_size_per_bin(dist: Distribution, grid: Grid) -> float:
    """Same quantity summed bin by bin over a materialized grid."""
    m = bin_masses(dist, grid)
    logw = np.log2(grid.widths)
    keep = m > 0.0
    return math.fsum((m[keep] * logw[keep]).tolist())


def approx_entropy_tilde(dist: Distribution, fmt: FpFormat) -> float:
    """H-tilde: differential entropy minus the expected log bin size."""
    return dist.entropy_bits() - expected_log2_bin_size(dist, fmt)


def approx_entropy_smooth(dist: Distribution, fmt: FpFormat) -> float:
    """H-tilde-s: the smooth-bin-size approximation, p - 1/2 + h - E[log2|X|]."""
    return (
        fmt.precision - 0.5 + dist.entropy_bits() - dist.expected_log2_abs()
    )


def smooth_entropy_closed_form(dist: Distribution, fmt: FpFormat) -> float:
    """Per-family closed form of the smooth approximation.

    Written as independent per-family algebra (scale parameters cancel),
    deliberately not routed through entropy_bits/expected_log2_abs, so it
    cross-checks approx_entropy_smooth.  Raises ValueError for families
    without a closed form here (e.g. an asymmetric uniform).
    """
    # scaling leaves the smooth approximation unchanged
    from .distributions import (
        Beta,
        ChiSquared,
        Gamma,
        Gaussian,
        Laplace,
        Logistic,
        Lognormal,
        Pareto,
        ScaledDistribution,
        StudentT,
        Uniform,
        Weibull,
    )
    from .special import beta_fn, digamma, lgamma

    if isinstance(dist, ScaledDistribution):
        return smooth_entropy_closed_form(dist.base, fmt)
    p = float(fmt.precision)
    ln2 = math.log(2.0)
    if isinstance(dist, Gaussian):
        return p + 0.5 * math.log2(2.0 * math.pi * math.e) + _EULER / (2.0 * ln2)
    if isinstance(dist, Uniform):
        if dist.a != -dist.b:
            raise ValueError(
                "closed form covers the symmetric uniform(-a, a) only"
            )
        return p + 0.5 + _LOG2E
    if isinstance(dist, ChiSquared):
        k = dist.k
        return (
            p - 0.5
            + (k / 2.0) * _LOG2E * (1.0 - digamma(k / 2.0))
            + lgamma(k / 2.0) / ln2
        )
    if isinstance(dist, Gamma):
        a = dist.alpha
        return p - 0.5 + a * _LOG2E * (1.0 - digamma(a)) + lgamma(a) / ln2
    if isinstance(dist, Laplace):
        return p + 0.5 + (1.0 + _EULER) / ln2
    if isinstance(dist, Logistic):
        return p - 0.5 + (2.0 + _EULER - math.log(math.pi / 2.0)) / ln2
    if isinstance(dist, Weibull):
        return p - 0.5 + (1.0 + _EULER) / ln2 - math.log2(dist.k)
    if isinstance(dist, Lognormal):
        return p - 0.5 + math.log2(dist.sigma * math.sqrt(2.0 * math.pi * math.e))
    if isinstance(dist, Pareto):
        return p - 0.5 + math.log2(math.e / dist.alpha)
    if isinstance(dist, Beta):
        a, b = dist.alpha, dist.beta
        return (
            p - 0.5
            + math.log2(beta_fn(a, b))
            + (
                (a + b - 1.0) * digamma(a + b)
                - a * digamma(a)
                - (b - 1.0) * digamma(b)
            ) / ln2
        )
    if isinstance(dist, StudentT):
        nu = dist.nu
        return (
            p - 0.5
            + math.log2(beta_fn(nu / 2.0, 0.5))
            + (
                0.5 * (nu + 1.0) * digamma((nu + 1.0) / 2.0)
                - 0.5 * nu * digamma(nu / 2.0)
                - 0.5 * digamma(0.5)
            ) / ln2
        )
    raise ValueError(f"no closed form for {dist.spec_string()!r}")


def overflow_mass(dist: Distribution, fmt: FpFormat) -> float:
    g = fmt.granular_bound
    return dist.sf(g) + dist.cdf(-g)


def underflow_mass(dist: Distribution, fmt: FpFormat) -> float:
    s = fmt.smallest_positive
    return dist.interval_mass(-s, s)


@dataclass(frozen=True)
class EntropyReport:
    dist: str
    precision: int
    exponent_bits: int
    exact_bits: float
    approx_tilde_bits: float
    approx_smooth_bits: float
    closed_form_bits: float | None
    p_overflow: float
    p_underflow: float
    elapsed_s: float


def full_report(
    dist: Distribution, fmt: FpFormat, *, grid: Grid | None = None
) -> EntropyReport:
    start = time.perf_counter()
    grid = grid if grid is not None else build_grid(fmt)
    exact = exact_entropy(dist, fmt, grid=grid)
    tilde = approx_entropy_tilde(dist, fmt)
    smooth = approx_entropy_smooth(dist, fmt)
    try:
        closed: float | None = smooth_entropy_closed_form(dist, fmt)
    except ValueError:
        closed = None
    return EntropyReport(
        dist=dist.spec_string(),
        precision=fmt.precision,
        exponent_bits=fmt.exponent_bits,
        exact_bits=exact,
        approx_tilde_bits=tilde,
        approx_smooth_bits=smooth,
        closed_form_bits=closed,
        p_overflow=overflow_mass(dist, fmt),
        p_underflow=underflow_mass(dist, fmt),
        elapsed_s=time.perf_counter() - start,
    )


# ── multivariate Gaussian ────────────────────────────────────────────────────


def mvg_smooth_entropy(mvg: MultivariateGaussian, fmt: FpFormat) -> float:
    """Smooth approximation for a componentwise-quantized Gaussian vector.

    d * (p - 1/2) + h(X) - sum_i E[log2 |X_i|], with h from the eigenvalues
    of the covariance.
    """
    d = mvg.dim
    h = 0.5 * (
        d * math.log2(2.0 * math.pi * math.e)
        + math.fsum(math.log2(v) for v in mvg.eigenvalues)
    )
    sum_elog = math.fsum(g.expected_log2_abs() for g in mvg.marginals())
    return d * (fmt.precision - 0.5) + h - sum_elog


def mvg_smooth_entropy_marginal_form(
    mvg: MultivariateGaussian, fmt: FpFormat
) -> float:
    """Equivalent form: marginal smooth entropies plus half the log ratio
    of the covariance determinant to the product of its diagonal."""
    marg = math.fsum(
        approx_entropy_smooth(g, fmt) for g in mvg.marginals()
    )
    log_det = math.fsum(math.log2(v) for v in mvg.eigenvalues)
    log_diag = math.fsum(math.log2(v) for v in np.diag(mvg.cov))
    return marg + 0.5 * (log_det - log_diag)
