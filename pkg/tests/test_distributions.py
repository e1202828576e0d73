"""Distribution layer: closed forms against quadrature, stable tails, scaling.

Frozen high-precision values come from tests/oracles/dist_oracle.py.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from fpentropy.distributions import (
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
from fpentropy.quadrature import integrate

CASES: list[Distribution] = [
    Gaussian(0.37), Gaussian(1.0), Gaussian(5.25),
    Uniform(-1.0, 1.0), Uniform(-0.5, 2.75), Uniform(0.25, 9.0), Uniform(-3.5, -0.75),
    Laplace(0.6), Laplace(1.0), Laplace(3.2),
    Logistic(0.44), Logistic(1.0), Logistic(2.8),
    Weibull(0.7, 1.3), Weibull(1.0, 1.0), Weibull(2.4, 0.9),
    Lognormal(0.0, 1.0), Lognormal(-0.7, 0.45), Lognormal(1.2, 2.1),
    Pareto(0.9, 1.0), Pareto(1.5, 0.37), Pareto(3.0, 2.0),
    Gamma(0.6, 1.0), Gamma(1.0, 2.0), Gamma(2.0, 1.0), Gamma(7.5, 0.33),
    ChiSquared(1.0), ChiSquared(2.0), ChiSquared(5.0),
    Beta(2.0, 2.0), Beta(0.5, 0.5), Beta(5.0, 1.5), Beta(0.8, 3.0),
    StudentT(1.0, 1.0), StudentT(3.0, 0.7), StudentT(12.0, 2.0),
]

_IDS = [d.spec_string() for d in CASES]


def _split_points(dist: Distribution) -> list[float]:
    pts = list(dist.pdf_breakpoints()) + list(dist.singular_points()) + [0.0]
    lo, hi = dist.support
    return sorted({p for p in pts if lo < p < hi} | ({lo} if math.isfinite(lo) else set()) | ({hi} if math.isfinite(hi) else set()))


@pytest.mark.parametrize("dist", CASES, ids=_IDS)
def test_entropy_bits_matches_quadrature(dist):
    lo, hi = dist.support

    def nlog(x: float) -> float:
        f = dist.pdf(x)
        return 0.0 if f == 0.0 else -f * math.log2(f)

    r = integrate(nlog, lo, hi, abs_tol=1e-9, points=_split_points(dist))
    assert abs(r.value - dist.entropy_bits()) < 1e-6


@pytest.mark.parametrize("dist", CASES, ids=_IDS)
def test_expected_log2_abs_matches_quadrature(dist):
    lo, hi = dist.support

    def integrand(x: float) -> float:
        if x == 0.0:
            return 0.0
        f = dist.pdf(x)
        return 0.0 if f == 0.0 else f * math.log2(abs(x))

    r = integrate(integrand, lo, hi, abs_tol=1e-9, points=_split_points(dist))
    assert abs(r.value - dist.expected_log2_abs()) < 1e-6


@pytest.mark.parametrize("dist", CASES, ids=_IDS)
def test_cdf_matches_integrated_pdf(dist):
    lo, hi = dist.support
    lo_f = lo if math.isfinite(lo) else None
    for q in (0.11, 0.42, 0.73, 0.96):
        # pick probe points spread over the support via rough inversion
        x = _rough_quantile(dist, q)
        r = integrate(
            dist.pdf,
            lo if lo_f is None else lo_f,
            x,
            abs_tol=1e-10,
            points=_split_points(dist),
        )
        assert abs(r.value - dist.cdf(x)) < 1e-8, (dist.spec_string(), x)


def _rough_quantile(dist: Distribution, q: float) -> float:
    lo, hi = dist.support
    a = lo if math.isfinite(lo) else -1e3
    b = hi if math.isfinite(hi) else 1e3
    for _ in range(200):
        m = 0.5 * (a + b)
        if dist.cdf(m) < q:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


@pytest.mark.parametrize("dist", CASES, ids=_IDS)
def test_cdf_sf_complement_and_monotone(dist):
    probes = [_rough_quantile(dist, q) for q in (0.05, 0.3, 0.5, 0.8, 0.99)]
    last = -1.0
    for x in probes:
        c, s = dist.cdf(x), dist.sf(x)
        assert 0.0 <= c <= 1.0 and 0.0 <= s <= 1.0
        assert abs(c + s - 1.0) < 1e-12
        assert c >= last - 1e-15
        last = c


@pytest.mark.parametrize("dist", CASES, ids=_IDS)
def test_scaling_shifts_log_moments(dist):
    for s in (0.125, 3.7, 2.0**20):
        scaled = dist.with_scale(s)
        assert abs(
            scaled.entropy_bits() - dist.entropy_bits() - math.log2(s)
        ) < 1e-9
        assert abs(
            scaled.expected_log2_abs() - dist.expected_log2_abs() - math.log2(s)
        ) < 1e-9
        # mass is preserved under scaling
        a, b = _rough_quantile(dist, 0.2), _rough_quantile(dist, 0.7)
        assert abs(
            scaled.interval_mass(a * s, b * s) - dist.interval_mass(a, b)
        ) < 1e-11


def test_far_tail_masses_are_stable():
    # frozen with 40-digit arithmetic
    g = Gaussian(1.0)
    assert abs(g.interval_mass(9.0, 10.0) - 1.1285122074235990e-19) < 1e-25
    assert abs(g.interval_mass(-10.0, -9.0) - 1.1285122074235990e-19) < 1e-25
    p = Pareto(0.9, 1.0)
    assert abs(p.sf(1e6) - 3.9810717055349725e-6) < 1e-18


def test_frozen_closed_forms():
    assert abs(Gaussian(1.0).entropy_bits() - 2.0470955851806411) < 1e-13
    assert abs(Laplace(1.0).entropy_bits() - 2.4426950408889634) < 1e-13
    assert abs(Beta(2.0, 2.0).entropy_bits() + 0.18047076590621717) < 1e-13
    assert abs(Gamma(2.0, 1.0).expected_log2_abs() - 0.60994886361209626) < 1e-13
    assert abs(StudentT(3.0, 0.7).expected_log2_abs() + 1.1647869633581436) < 1e-13


def test_chi_squared_is_gamma():
    c = ChiSquared(5.0)
    g = Gamma(2.5, 2.0)
    for x in (0.1, 1.0, 4.2, 11.0):
        assert c.pdf(x) == g.pdf(x)
        assert c.cdf(x) == g.cdf(x)
    assert c.entropy_bits() == g.entropy_bits()


def test_interval_mass_basic():
    u = Uniform(0.0, 1.0)
    assert u.interval_mass(0.25, 0.75) == 0.5
    assert u.interval_mass(0.75, 0.25) == 0.0
    assert u.interval_mass(-5.0, 5.0) == 1.0


def test_scaled_wrapper_consistency():
    base = Beta(2.0, 2.0)
    sc = base.with_scale(4.0)
    assert isinstance(sc, ScaledDistribution)
    assert sc.support == (0.0, 4.0)
    assert abs(sc.pdf(2.0) - base.pdf(0.5) / 4.0) < 1e-15
    assert abs(sc.cdf(1.0) - base.cdf(0.25)) < 1e-15
    assert sc.pdf_breakpoints() == [2.0]


def test_parse_distribution():
    d = parse_distribution("gaussian:sigma=2.5")
    assert isinstance(d, Gaussian) and d.sigma == 2.5
    d = parse_distribution("uniform:a=-3,b=7")
    assert isinstance(d, Uniform) and (d.a, d.b) == (-3.0, 7.0)
    d = parse_distribution("weibull:k=0.7,lam=2")
    assert isinstance(d, Weibull) and (d.k, d.lam) == (0.7, 2.0)
    assert isinstance(parse_distribution("laplace"), Laplace)
    assert isinstance(parse_distribution(" GAUSSIAN : sigma = 1 "), Gaussian)


def test_parse_distribution_errors():
    with pytest.raises(ValueError, match="unknown distribution"):
        parse_distribution("cauchy")
    with pytest.raises(ValueError, match="key=value"):
        parse_distribution("gaussian:sigma")
    with pytest.raises(ValueError, match="non-numeric"):
        parse_distribution("gaussian:sigma=abc")
    with pytest.raises(ValueError, match="invalid parameters"):
        parse_distribution("gaussian:nope=1")
    with pytest.raises(ValueError):
        parse_distribution("gaussian:sigma=-1")


def test_sampling_moments():
    rng = np.random.Generator(np.random.Philox(key=7))
    x = Gaussian(2.0).sample(rng, 200_000)
    assert abs(x.mean()) < 0.02 and abs(x.std() - 2.0) < 0.02
    y = Pareto(3.0, 2.0).sample(rng, 200_000)
    assert y.min() >= 2.0
    assert abs(y.mean() - 3.0) < 0.05  # E = alpha*xm/(alpha-1)


def test_multivariate_gaussian_validation():
    m = MultivariateGaussian([[1.0, 0.5], [0.5, 1.0]])
    assert m.dim == 2
    assert [g.sigma for g in m.marginals()] == [1.0, 1.0]
    with pytest.raises(ValueError, match="square"):
        MultivariateGaussian([[1.0, 0.0]])
    with pytest.raises(ValueError, match="symmetric"):
        MultivariateGaussian([[1.0, 0.4], [0.1, 1.0]])
    with pytest.raises(ValueError, match="positive definite"):
        MultivariateGaussian([[1.0, 1.0], [1.0, 1.0]])


def test_multivariate_gaussian_sampling():
    m = MultivariateGaussian([[1.0, 0.6], [0.6, 2.0]])
    rng = np.random.Generator(np.random.Philox(key=11))
    x = m.sample(rng, 300_000)
    emp = np.cov(x.T)
    assert np.allclose(emp, m.cov, atol=0.02)
