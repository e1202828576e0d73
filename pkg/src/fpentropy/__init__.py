"""Exact and approximate discrete entropy of floating-point-quantized variables."""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    KlBoundReport,
    SmoothingErrorReport,
    kl_bound_report,
    kl_divergence,
    kl_from_identity,
    kl_lower_bound,
    kl_upper_bound,
    lambda_max,
    level_fraction,
    one_peak_bound,
    smoothing_epsilon,
    smoothing_report,
    superlevel_measure,
    superlevel_regions,
)
from .distributions import (
    Beta,
    ChiSquared,
    Distribution,
    Gamma,
    Gaussian,
    Laplace,
    Logistic,
    Lognormal,
    MultivariateGaussian,
    Pareto,
    ScaledDistribution,
    StudentT,
    Uniform,
    Weibull,
    parse_distribution,
)
from .entropy import (
    EntropyReport,
    approx_entropy_smooth,
    approx_entropy_tilde,
    bin_masses,
    exact_entropy,
    expected_log2_bin_size,
    full_report,
    mvg_smooth_entropy,
    mvg_smooth_entropy_marginal_form,
    overflow_mass,
    smooth_entropy_closed_form,
    underflow_mass,
)
from .errors import NumericalError
from .formats import (
    Bin,
    BinKind,
    FpFormat,
    FpValue,
    Grid,
    Region,
    bin_size,
    build_grid,
    classify,
    encode,
    quantize_indices,
    round_p,
    smooth_bin_size,
)
from .mc import McEntropyReport, mc_entropy
from .sweeps import (
    SweepPoint,
    SweepResult,
    SweepSpec,
    run_multi_sweep,
    run_sweep,
    sweep_csv_text,
    sweep_to_csv,
)

__all__ = [
    "__version__",
    "NumericalError",
    # formats
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
    # distributions
    "Distribution",
    "Gaussian",
    "Uniform",
    "Laplace",
    "Logistic",
    "Weibull",
    "Lognormal",
    "Pareto",
    "Gamma",
    "ChiSquared",
    "Beta",
    "StudentT",
    "ScaledDistribution",
    "MultivariateGaussian",
    "parse_distribution",
    # entropy
    "EntropyReport",
    "exact_entropy",
    "bin_masses",
    "expected_log2_bin_size",
    "approx_entropy_tilde",
    "approx_entropy_smooth",
    "smooth_entropy_closed_form",
    "overflow_mass",
    "underflow_mass",
    "full_report",
    "mvg_smooth_entropy",
    "mvg_smooth_entropy_marginal_form",
    # bounds
    "KlBoundReport",
    "SmoothingErrorReport",
    "kl_divergence",
    "kl_from_identity",
    "kl_lower_bound",
    "kl_upper_bound",
    "one_peak_bound",
    "superlevel_regions",
    "superlevel_measure",
    "level_fraction",
    "lambda_max",
    "kl_bound_report",
    "smoothing_epsilon",
    "smoothing_report",
    # monte carlo
    "McEntropyReport",
    "mc_entropy",
    # sweeps
    "SweepSpec",
    "SweepPoint",
    "SweepResult",
    "run_sweep",
    "run_multi_sweep",
    "sweep_csv_text",
    "sweep_to_csv",
]
