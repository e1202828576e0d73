"""Monte Carlo estimation of quantized entropy.

Samples are drawn in fixed-size chunks from counter-based Philox streams
(chunk i uses `Philox(key=seed).jumped(i)`), so results are bit-for-bit
reproducible for a given (seed, chunk_size) regardless of how many chunks
run.  Each chunk is quantized with the vectorized encoder, merged into a
value-index histogram, and the entropy is estimated by the plug-in
formula with an optional Miller-Madow bias correction.

Multivariate inputs quantize each coordinate independently and count the
tuple of indices via a single packed integer per sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, MultivariateGaussian
from .errors import NumericalError
from .formats import FpFormat, quantize_indices

__all__ = ["McEntropyReport", "mc_entropy"]

_LN2 = math.log(2.0)
_DEFAULT_CHUNK = 1_000_000


@dataclass(frozen=True)
class McEntropyReport:
    dist: str
    precision: int
    exponent_bits: int
    n_samples: int
    n_zero_dropped: int
    seed: int
    chunk_size: int
    miller_madow: bool
    support_observed: int
    plug_in_bits: float
    estimate_bits: float
    std_error_bits: float


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(chunk_index))


def _entropy_from_counts(
    counts: np.ndarray, n: int, miller_madow: bool
) -> tuple[float, float, float]:
    """(plug-in bits, corrected bits, std error bits)."""
    p = counts / n
    log_p = np.log2(p)
    plug_in = float(-(p * log_p).sum())
    second = float((p * log_p * log_p).sum())
    var = max(second - plug_in * plug_in, 0.0)
    std_error = math.sqrt(var / n)
    estimate = plug_in
    if miller_madow:
        estimate += (len(counts) - 1) / (2.0 * n * _LN2)
    return plug_in, estimate, std_error


def mc_entropy(
    dist: Distribution | MultivariateGaussian,
    fmt: FpFormat,
    n_samples: int,
    *,
    seed: int = 0,
    chunk_size: int = _DEFAULT_CHUNK,
    miller_madow: bool = True,
) -> McEntropyReport:
    """Estimate the entropy of the quantized variable from samples."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")

    if isinstance(dist, MultivariateGaussian):
        dim = dist.dim
        label = f"multivariate_gaussian:dim={dim}"
    else:
        dim = 1
        label = dist.spec_string()
    bits_per_coord = fmt.exponent_bits + fmt.precision
    if dim * bits_per_coord > 62:
        raise NumericalError(
            "mc",
            f"{dim} coordinates of {bits_per_coord} index bits each do not "
            "fit a 64-bit packed key",
        )
    k = fmt.num_values

    counts: dict[int, int] = {}
    n_dropped = 0
    n_kept = 0
    n_chunks = (n_samples + chunk_size - 1) // chunk_size
    for ci in range(n_chunks):
        m = min(chunk_size, n_samples - ci * chunk_size)
        rng = _chunk_rng(seed, ci)
        x = dist.sample(rng, m)
        if dim == 1:
            x = np.asarray(x, dtype=np.float64).reshape(-1)
            nz = x != 0.0
            if not nz.all():
                n_dropped += int((~nz).sum())
                x = x[nz]
            keys = quantize_indices(x, fmt)
        else:
            nz = (x != 0.0).all(axis=1)
            if not nz.all():
                n_dropped += int((~nz).sum())
                x = x[nz]
            keys = np.zeros(x.shape[0], dtype=np.int64)
            for j in range(dim):
                keys = keys * k + quantize_indices(x[:, j], fmt)
        n_kept += keys.shape[0]
        uniq, cnt = np.unique(keys, return_counts=True)
        for key, c in zip(uniq.tolist(), cnt.tolist()):
            counts[key] = counts.get(key, 0) + c

    if n_kept == 0:
        raise NumericalError("mc", "all samples were exactly zero")
    cnt_arr = np.fromiter(counts.values(), dtype=np.int64, count=len(counts))
    plug_in, estimate, std_error = _entropy_from_counts(
        cnt_arr, n_kept, miller_madow
    )
    return McEntropyReport(
        dist=label,
        precision=fmt.precision,
        exponent_bits=fmt.exponent_bits,
        n_samples=n_kept,
        n_zero_dropped=n_dropped,
        seed=seed,
        chunk_size=chunk_size,
        miller_madow=miller_madow,
        support_observed=len(counts),
        plug_in_bits=plug_in,
        estimate_bits=estimate,
        std_error_bits=std_error,
    )
