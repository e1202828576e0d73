"""Special functions against an independent reference (scipy, test-only dep)."""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.special as sp

from fpentropy.special import (
    beta_fn,
    beta_inc,
    digamma,
    erf,
    erfc,
    gamma_p,
    gamma_q,
    lgamma,
)

AS = np.array([0.05, 0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 3.7, 5.0, 10.0, 25.0, 80.0])
XS = np.geomspace(1e-6, 1e3, 40)


def test_digamma_matches_reference():
    xs = np.geomspace(1e-4, 1e6, 200)
    ours = np.array([digamma(float(x)) for x in xs])
    ref = sp.digamma(xs)
    np.testing.assert_allclose(ours, ref, rtol=1e-12, atol=1e-12)


def test_digamma_half_and_one():
    # psi(1) = -gamma, psi(1/2) = -gamma - 2 ln 2
    g = 0.5772156649015329
    assert abs(digamma(1.0) + g) < 1e-14
    assert abs(digamma(0.5) + g + 2.0 * math.log(2.0)) < 1e-14


def test_digamma_rejects_nonpositive():
    for bad in (0.0, -1.5):
        with pytest.raises(ValueError):
            digamma(bad)


def test_gamma_p_q_match_reference():
    for a in AS:
        for x in XS:
            p = gamma_p(float(a), float(x))
            q = gamma_q(float(a), float(x))
            assert np.isclose(p, sp.gammainc(a, x), rtol=1e-11, atol=1e-13)
            assert np.isclose(q, sp.gammaincc(a, x), rtol=1e-11, atol=1e-13)
            assert abs(p + q - 1.0) < 1e-12


def test_gamma_p_edges():
    assert gamma_p(2.0, 0.0) == 0.0
    assert gamma_q(2.0, 0.0) == 1.0
    assert abs(gamma_p(1.0, 1.0) - (1.0 - math.exp(-1.0))) < 1e-14
    with pytest.raises(ValueError):
        gamma_p(-1.0, 2.0)
    with pytest.raises(ValueError):
        gamma_q(1.0, -0.5)


def test_beta_inc_matches_reference():
    xs = np.linspace(0.0, 1.0, 41)
    for a in AS[:9]:
        for b in AS[:9]:
            for x in xs:
                ours = beta_inc(float(a), float(b), float(x))
                ref = sp.betainc(a, b, x)
                assert np.isclose(ours, ref, rtol=1e-11, atol=1e-13), (a, b, x)


def test_beta_inc_edges():
    assert beta_inc(2.0, 3.0, 0.0) == 0.0
    assert beta_inc(2.0, 3.0, 1.0) == 1.0
    with pytest.raises(ValueError):
        beta_inc(2.0, 3.0, 1.5)
    with pytest.raises(ValueError):
        beta_inc(0.0, 3.0, 0.5)


def test_beta_fn_matches_reference():
    for a in AS:
        for b in AS:
            assert np.isclose(beta_fn(float(a), float(b)), sp.beta(a, b), rtol=1e-12)


def test_stdlib_reexports():
    assert lgamma is math.lgamma
    assert erf is math.erf
    assert erfc is math.erfc
