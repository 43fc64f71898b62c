import numpy as np
import pytest
from fastapi.testclient import TestClient

from spinchain import config_to_dict, sweep_spectrum
from spinchain.presets import FIGURE_IDS, reference_chain
from spinchain.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def body_for(config, **extra):
    d = config_to_dict(config)
    return {
        "config": {
            "resonators": d["resonators"],
            "coupling_j_hz": d["coupling_j_hz"],
            "drive": d["drive"],
        },
        **extra,
    }


def test_health(client):
    response = client.get("/v1/health")
    assert response.status_code == 200
    payload = response.json()
    assert payload["status"] == "ok"
    assert payload["version"]


def test_presets_listing(client):
    response = client.get("/v1/presets")
    assert response.status_code == 200
    ids = [f["figure_id"] for f in response.json()["figures"]]
    assert ids == sorted(FIGURE_IDS)


def test_spectrum_endpoint_matches_library(client):
    config = reference_chain((0.0,))
    response = client.post(
        "/v1/spectrum",
        json=body_for(config, dp_min_hz=-4e6, dp_max_hz=4e6, points=9),
    )
    assert response.status_code == 200
    payload = response.json()
    expected = sweep_spectrum(config, np.linspace(-4e6, 4e6, 9))
    assert payload["delta_p_hz"] == expected.grid.tolist()
    assert payload["transmission"] == expected.transmission.tolist()
    assert payload["phase_rad"] == expected.phase.tolist()
    assert payload["tau_g_s"] == expected.tau_g.tolist()


def test_spectrum_rejects_bad_grid(client):
    config = reference_chain((0.0,))
    response = client.post(
        "/v1/spectrum",
        json=body_for(config, dp_min_hz=4e6, dp_max_hz=-4e6, points=9),
    )
    assert response.status_code == 422  # pydantic validation


def test_spectrum_rejects_coupling_mismatch(client):
    config = reference_chain((0.0, 0.0))
    body = body_for(config, dp_min_hz=-1e6, dp_max_hz=1e6, points=5)
    body["config"]["coupling_j_hz"] = []
    response = client.post("/v1/spectrum", json=body)
    assert response.status_code == 422


def test_solver_failure_maps_to_422_with_solver_error(client):
    config = reference_chain((0.0, 0.0))
    body = body_for(config, dp_min_hz=-1e6, dp_max_hz=1e6, points=5)
    body["config"]["resonators"][1]["kappa_in_hz"] = 0.0  # pumped but lossless
    response = client.post("/v1/spectrum", json=body)
    assert response.status_code == 422
    payload = response.json()
    assert payload["error"] == "solver"
    assert "leakage" in payload["detail"]


def test_metrics_endpoint(client):
    config = reference_chain((1.0, -1.0))
    response = client.post(
        "/v1/metrics",
        json=body_for(
            config,
            delta_p_hz=10e6,
            omega_min_hz=0.0,
            omega_max_hz=20e3,
            points=3,
            mode="ef",
        ),
    )
    assert response.status_code == 200
    payload = response.json()
    assert payload["mode"] == "ef"
    assert len(payload["omega_hz"]) == 3
    assert payload["omega_hz"][0] == 0.0
    assert payload["value"][0] == 0.0


def test_reproduce_unknown_figure_404(client):
    response = client.post("/v1/reproduce", json={"figure_id": "fig99"})
    assert response.status_code == 404
    assert "fig2a" in response.json()["detail"]
