"""Entropy engine: frozen references, dual routes, closed forms, scaling.

Frozen values come from tests/oracles/entropy_oracle.py (40-digit mpmath
on the exact-rational grid).
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpentropy.distributions import (
    Beta,
    ChiSquared,
    Gamma,
    Gaussian,
    Laplace,
    Logistic,
    Lognormal,
    MultivariateGaussian,
    Pareto,
    StudentT,
    Uniform,
    Weibull,
)
from fpentropy.entropy import (
    approx_entropy_smooth,
    approx_entropy_tilde,
    bin_masses,
    entropy_from_masses,
    exact_entropy,
    expected_log2_bin_size,
    expected_log2_bin_size_per_bin,
    full_report,
    mvg_smooth_entropy,
    mvg_smooth_entropy_marginal_form,
    overflow_mass,
    smooth_entropy_closed_form,
    underflow_mass,
)
from fpentropy.formats import FpFormat, build_grid

SMALL_FORMATS = st.tuples(st.integers(1, 5), st.integers(1, 4)).map(
    lambda t: FpFormat(precision=t[0], exponent_bits=t[1])
)

MIX = [
    Gaussian(1.0),
    Gaussian(0.2),
    Uniform(-1.0, 1.0),
    Uniform(0.25, 5.0),
    Laplace(1.3),
    Gamma(2.0, 1.0),
    Gamma(0.7, 2.0),
    Pareto(0.9, 1.0),
    Lognormal(0.0, 1.5),
    Beta(0.5, 0.5),
    StudentT(2.0, 1.0),
]


class TestExactEntropy:
    def test_frozen_values(self):
        assert abs(
            exact_entropy(Gaussian(1.0), FpFormat(1, 1)) - 1.5672680241374945
        ) < 1e-10
        assert abs(
            exact_entropy(Gaussian(1.0), FpFormat(3, 3)) - 5.0405210748582221
        ) < 1e-10
        assert abs(
            exact_entropy(Uniform(-1.0, 1.0), FpFormat(2, 2)) - 2.2987949406953985
        ) < 1e-10
        assert abs(
            exact_entropy(Gamma(2.0, 1.0), FpFormat(1, 2)) - 1.9419736764739776
        ) < 1e-10

    def test_masses_sum_to_one(self):
        for dist in MIX:
            g = build_grid(FpFormat(3, 3))
            total = math.fsum(bin_masses(dist, g).tolist())
            assert abs(total - 1.0) < 1e-12, dist.spec_string()

    def test_entropy_from_masses_edge_cases(self):
        assert entropy_from_masses(np.array([1.0])) == 0.0
        assert abs(entropy_from_masses(np.array([0.5, 0.5])) - 1.0) < 1e-15
        assert entropy_from_masses(np.array([0.0, 1.0])) == 0.0
        assert entropy_from_masses(np.array([])) == 0.0

    def test_entropy_bounded_by_log_k(self):
        for dist in MIX:
            fmt = FpFormat(2, 2)
            h = exact_entropy(dist, fmt)
            assert 0.0 <= h <= fmt.exponent_bits + fmt.precision


class TestExpectedLogBinSize:
    def test_frozen_values(self):
        assert abs(
            expected_log2_bin_size(Gaussian(1.0), FpFormat(2, 3))
            - (-2.0678955301401382)
        ) < 1e-10
        assert abs(
            expected_log2_bin_size(Gamma(2.0, 1.0), FpFormat(1, 2))
            - 0.3419361745636865
        ) < 1e-10

    @settings(max_examples=60, deadline=None)
    @given(SMALL_FORMATS, st.sampled_from(MIX))
    def test_block_route_matches_per_bin_route(self, fmt, dist):
        block = expected_log2_bin_size(dist, fmt)
        per_bin = expected_log2_bin_size_per_bin(dist, build_grid(fmt))
        assert abs(block - per_bin) < 1e-10

    def test_tilde_is_h_minus_expected_log_width(self):
        dist, fmt = Laplace(2.0), FpFormat(3, 4)
        assert approx_entropy_tilde(dist, fmt) == pytest.approx(
            dist.entropy_bits() - expected_log2_bin_size(dist, fmt), abs=1e-14
        )


class TestTailMasses:
    def test_overflow_frozen(self):
        # G = 3.75 at p=3, E=1
        assert abs(
            overflow_mass(Gaussian(1.0), FpFormat(3, 1)) - 1.7683457040160774e-4
        ) < 1e-14

    def test_underflow(self):
        fmt = FpFormat(3, 3)  # smallest positive 0.125
        d = Uniform(-1.0, 1.0)
        assert abs(underflow_mass(d, fmt) - 0.125) < 1e-14
        assert underflow_mass(Pareto(1.0, 1.0), fmt) == 0.0


class TestSmoothClosedForms:
    TABLE = [
        Gaussian(0.3),
        Gaussian(7.0),
        Uniform(-2.5, 2.5),
        Gamma(1.7, 3.0),
        ChiSquared(3.0),
        Laplace(0.8),
        Logistic(1.9),
        Weibull(1.4, 2.2),
        Lognormal(0.4, 1.1),
        Pareto(2.2, 5.0),
        Beta(2.0, 3.5),
        StudentT(4.0, 1.3),
    ]

    @pytest.mark.parametrize("dist", TABLE, ids=lambda d: d.spec_string())
    def test_matches_generic_route(self, dist):
        fmt = FpFormat(4, 5)
        closed = smooth_entropy_closed_form(dist, fmt)
        generic = approx_entropy_smooth(dist, fmt)
        assert abs(closed - generic) < 1e-6

    def test_scaled_distribution_delegates(self):
        base = Beta(2.0, 3.5)
        fmt = FpFormat(4, 5)
        assert smooth_entropy_closed_form(
            base.with_scale(16.0), fmt
        ) == smooth_entropy_closed_form(base, fmt)

    def test_asymmetric_uniform_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            smooth_entropy_closed_form(Uniform(0.0, 1.0), FpFormat(3, 3))

    def test_scale_invariance_exact(self):
        fmt = FpFormat(3, 7)
        for dist in (Gaussian(1.0), Laplace(1.0), Gamma(2.0, 1.0)):
            base = approx_entropy_smooth(dist, fmt)
            for k in range(-10, 11):
                scaled = approx_entropy_smooth(dist.with_scale(2.0**k), fmt)
                assert abs(scaled - base) < 1e-9


class TestFullReport:
    def test_fields(self):
        rep = full_report(Gaussian(1.0), FpFormat(3, 3))
        assert rep.dist == "gaussian:sigma=1"
        assert (rep.precision, rep.exponent_bits) == (3, 3)
        assert abs(rep.exact_bits - 5.0405210748582221) < 1e-10
        assert rep.closed_form_bits is not None
        assert abs(rep.closed_form_bits - rep.approx_smooth_bits) < 1e-6
        assert 0.0 <= rep.p_overflow < 1e-6
        assert 0.0 < rep.p_underflow < 0.2
        assert rep.elapsed_s >= 0.0

    def test_closed_form_none_when_unavailable(self):
        rep = full_report(Uniform(0.0, 1.0), FpFormat(3, 3))
        assert rep.closed_form_bits is None


class TestMultivariateGaussian:
    def test_identity_covariance_doubles_univariate(self):
        fmt = FpFormat(3, 4)
        m = MultivariateGaussian(np.eye(2))
        uni = approx_entropy_smooth(Gaussian(1.0), fmt)
        assert abs(mvg_smooth_entropy(m, fmt) - 2.0 * uni) < 1e-9

    def test_correlation_shrinks_entropy_by_half_log(self):
        fmt = FpFormat(3, 4)
        rho = 0.5
        m = MultivariateGaussian([[1.0, rho], [rho, 1.0]])
        ind = MultivariateGaussian(np.eye(2))
        gap = mvg_smooth_entropy(m, fmt) - mvg_smooth_entropy(ind, fmt)
        assert abs(gap - 0.5 * math.log2(1.0 - rho * rho)) < 1e-9

    def test_marginal_form_agrees(self):
        fmt = FpFormat(4, 3)
        m = MultivariateGaussian([[2.0, 0.7, 0.1], [0.7, 1.0, -0.2], [0.1, -0.2, 3.0]])
        assert abs(
            mvg_smooth_entropy(m, fmt) - mvg_smooth_entropy_marginal_form(m, fmt)
        ) < 1e-9

    def test_scale_invariance(self):
        fmt = FpFormat(3, 4)
        cov = np.array([[1.0, 0.3], [0.3, 2.0]])
        a = mvg_smooth_entropy(MultivariateGaussian(cov), fmt)
        b = mvg_smooth_entropy(MultivariateGaussian(4.0 * cov), fmt)
        assert abs(a - b) < 1e-9
