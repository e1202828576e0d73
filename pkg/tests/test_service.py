"""Service endpoints: contracts, error mapping, parity with the library."""

from __future__ import annotations

import math

import pytest
from fastapi.testclient import TestClient

from fpentropy.distributions import Gaussian, MultivariateGaussian
from fpentropy.entropy import exact_entropy, mvg_smooth_entropy
from fpentropy.formats import FpFormat
from fpentropy.mc import mc_entropy
from fpentropy.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_grid_endpoint_frozen_small_grid(client):
    resp = client.post("/grid", json={"precision": 2, "exponent_bits": 1})
    assert resp.status_code == 200
    body = resp.json()
    assert body["value"] == [-3.0, -2.0, -1.5, -1.0, 1.0, 1.5, 2.0, 3.0]
    assert body["index"] == list(range(8))
    assert len(body["lower"]) == len(body["upper"]) == len(body["width"]) == 8
    assert body["width"][0] == 1.0


def test_grid_endpoint_rejects_bad_format(client):
    resp = client.post("/grid", json={"precision": 2, "exponent_bits": 99})
    assert resp.status_code in (400, 422)


def test_entropy_endpoint_matches_library(client):
    resp = client.post(
        "/entropy",
        json={"dist": "gaussian:sigma=1", "precision": 3, "exponent_bits": 4},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["exact_bits"] == pytest.approx(
        exact_entropy(Gaussian(1.0), FpFormat(3, 4)), abs=1e-12
    )
    assert body["closed_form_bits"] == pytest.approx(
        body["approx_smooth_bits"], abs=1e-12
    )
    assert body["p_overflow"] == 0.0


def test_entropy_endpoint_unknown_distribution_is_400(client):
    resp = client.post(
        "/entropy",
        json={"dist": "cauchy:x0=0", "precision": 3, "exponent_bits": 4},
    )
    assert resp.status_code == 400
    assert "cauchy" in resp.json()["detail"]


def test_entropy_endpoint_missing_field_is_422(client):
    resp = client.post("/entropy", json={"precision": 3, "exponent_bits": 4})
    assert resp.status_code == 422


def test_bounds_endpoint_sandwich(client):
    resp = client.post(
        "/bounds",
        json={"dist": "gaussian:sigma=1", "precision": 2, "exponent_bits": 2},
    )
    assert resp.status_code == 200
    kl = resp.json()["kl"]
    assert kl["lower_bits"] <= kl["kl_bits"] <= kl["upper_bits"] + 1e-9
    assert kl["one_peak_bits"] is not None
    sm = resp.json()["smoothing"]
    assert sm["holds"] is True
    assert sm["bound_bits"] == pytest.approx(0.5 + sm["epsilon_bits"])


def test_bounds_endpoint_unbounded_ratio_serializes_as_null(client):
    resp = client.post(
        "/bounds",
        json={"dist": "beta:alpha=0.5,beta=0.5", "precision": 3, "exponent_bits": 2},
    )
    assert resp.status_code == 200
    kl = resp.json()["kl"]
    assert kl["one_peak_bits"] is None
    assert len(kl["unbounded_ratio_bins"]) == 2
    assert math.isfinite(kl["upper_bits"])


def test_mc_endpoint_matches_library(client):
    resp = client.post(
        "/mc",
        json={
            "dist": "gaussian:sigma=1", "precision": 3, "exponent_bits": 4,
            "n_samples": 200_000, "seed": 5,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    lib = mc_entropy(Gaussian(1.0), FpFormat(3, 4), 200_000, seed=5)
    assert body["estimate_bits"] == pytest.approx(lib.estimate_bits, abs=1e-15)
    assert body["support_observed"] == lib.support_observed


def test_mc_endpoint_requires_exactly_one_target(client):
    base = {"precision": 3, "exponent_bits": 4, "n_samples": 10}
    neither = client.post("/mc", json=base)
    both = client.post(
        "/mc",
        json={**base, "dist": "gaussian:sigma=1", "cov": [[1.0]]},
    )
    assert neither.status_code == 400
    assert both.status_code == 400


def test_mc_endpoint_numerical_failure_names_component(client):
    eye3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    resp = client.post(
        "/mc",
        json={
            "cov": eye3, "precision": 11, "exponent_bits": 10, "n_samples": 10,
        },
    )
    assert resp.status_code == 500
    body = resp.json()
    assert body["component"] == "mc"
    assert "64-bit" in body["message"]


def test_sweep_endpoint_rows_and_csv(client):
    resp = client.post(
        "/sweep",
        json={
            "dists": ["gaussian:sigma=1", "laplace:b=1"],
            "mode": "scale", "precision": 3, "exponent_bits": 4,
            "lo": 0.5, "hi": 2.0, "num_points": 3,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["rows"]) == 6
    assert body["rows"][0]["dist"].startswith("gaussian")
    assert body["csv"].startswith("# version=")
    assert "# dist=gaussian:sigma=1;laplace:b=1" in body["csv"]


def test_sweep_endpoint_invalid_mode_is_422(client):
    resp = client.post(
        "/sweep",
        json={
            "dists": ["gaussian:sigma=1"], "mode": "width",
            "precision": 3, "exponent_bits": 4, "lo": 1, "hi": 2,
            "num_points": 2,
        },
    )
    assert resp.status_code == 422


def test_sweep_endpoint_bad_range_is_400(client):
    resp = client.post(
        "/sweep",
        json={
            "dists": ["gaussian:sigma=1"], "mode": "scale",
            "precision": 3, "exponent_bits": 4, "lo": -1.0, "hi": 2.0,
            "num_points": 2,
        },
    )
    assert resp.status_code == 400


def test_mvg_endpoint_matches_library(client):
    cov = [[1.0, 0.5], [0.5, 1.0]]
    resp = client.post(
        "/mvg", json={"cov": cov, "precision": 3, "exponent_bits": 4}
    )
    assert resp.status_code == 200
    body = resp.json()
    expected = mvg_smooth_entropy(MultivariateGaussian(cov), FpFormat(3, 4))
    assert body["smooth_bits"] == pytest.approx(expected, abs=1e-12)
    assert body["marginal_form_bits"] == pytest.approx(expected, abs=1e-9)
    assert body["dim"] == 2


def test_mvg_endpoint_rejects_non_positive_definite(client):
    resp = client.post(
        "/mvg",
        json={"cov": [[1.0, 2.0], [2.0, 1.0]], "precision": 3, "exponent_bits": 4},
    )
    assert resp.status_code == 400
    assert "positive definite" in resp.json()["detail"]
