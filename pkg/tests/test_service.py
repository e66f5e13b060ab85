import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from sequam.qubit_models import cnot_measuring_process, x_povm, z_povm
from sequam.serialization import matrix_to_pairs, povm_to_payload, process_to_payload
from sequam.service.app import create_app

H_BIN_LAM = 0.6008760366928561
C_PI4 = 0.22844669683638803
TWICE_H_BIN = 1.2017520733857122


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def z_payload(s=1.0):
    return povm_to_payload(z_povm(s))


def x_payload(theta=math.pi / 2, t=1.0):
    return povm_to_payload(x_povm(theta, t))


class TestHealth:
    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"


class TestFig2Endpoint:
    def test_preset(self, client):
        response = client.post("/fig2", json={"preset": "a", "points": 5})
        assert response.status_code == 200
        body = response.json()
        assert body["header"] == ["theta", "D1", "c"]
        assert len(body["rows"]) == 5
        assert body["rows"][-1][1] == pytest.approx(1.0, abs=1e-9)

    def test_explicit_parameters(self, client):
        response = client.post("/fig2", json={"s": 0.5, "t": 0.5, "points": 3})
        assert response.status_code == 200

    def test_preset_and_parameters_conflict(self, client):
        response = client.post("/fig2", json={"preset": "a", "s": 1.0, "t": 1.0})
        assert response.status_code == 422

    def test_missing_parameters(self, client):
        response = client.post("/fig2", json={"points": 5})
        assert response.status_code == 422

    def test_points_below_minimum(self, client):
        response = client.post("/fig2", json={"preset": "a", "points": 1})
        assert response.status_code == 422


class TestFig3Endpoint:
    def test_default_grid(self, client):
        response = client.post("/fig3", json={})
        assert response.status_code == 200
        body = response.json()
        assert len(body["rows"]) == 101
        assert body["rows"][0] == [0.0, 1.0, 0.0, 1.0]


class TestReportEndpoint:
    def test_sharp_orthogonal_pair(self, client):
        response = client.post("/report", json={"a": z_payload(), "b": x_payload()})
        assert response.status_code == 200
        body = response.json()
        assert body["D1"] == pytest.approx(1.0, abs=1e-9)
        assert body["D2"] == pytest.approx(1.0, abs=1e-9)
        assert body["c_maassen_uffink"] == pytest.approx(1.0, abs=1e-9)
        assert body["srinivas_bound"] == pytest.approx(1.0, abs=1e-9)
        assert body["violations"] == []
        assert body["metadata"]["state"] == "maximally-mixed"

    def test_unsharp_first_observable(self, client):
        response = client.post(
            "/report", json={"a": z_payload(2**-0.5), "b": x_payload()}
        )
        body = response.json()
        assert body["D2"] == pytest.approx(TWICE_H_BIN, abs=1e-9)
        assert body["luders_joint_bound"] == pytest.approx(C_PI4, abs=1e-9)
        assert "srinivas_bound" not in body  # undefined for unsharp input

    def test_process_instrument_matches_luders(self, client):
        s = 0.6
        process = process_to_payload(cnot_measuring_process(s))
        with_process = client.post(
            "/report",
            json={
                "a": z_payload(s),
                "b": x_payload(),
                "instrument": {"kind": "process", "process": process},
            },
        )
        with_luders = client.post(
            "/report", json={"a": z_payload(s), "b": x_payload()}
        )
        assert with_process.status_code == 200
        lhs, rhs = with_process.json(), with_luders.json()
        for key in ("H_joint", "D_rho", "D1", "D2", "c_maassen_uffink"):
            assert lhs[key] == pytest.approx(rhs[key], abs=1e-9)
        assert lhs["metadata"]["instrument"] == "process"

    def test_incompatible_process_rejected(self, client):
        process = process_to_payload(cnot_measuring_process(0.2))
        response = client.post(
            "/report",
            json={
                "a": z_payload(0.9),  # process induces Z(0.2), not Z(0.9)
                "b": x_payload(),
                "instrument": {"kind": "process", "process": process},
            },
        )
        assert response.status_code == 422
        assert response.json()["detail"]["category"] == "validation"

    def test_validation_category(self, client):
        sigma_x = [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]
        complement = [[[1.0, 0.0], [-1.0, 0.0]], [[-1.0, 0.0], [1.0, 0.0]]]
        response = client.post(
            "/report",
            json={"a": {"dim": 2, "elements": [sigma_x, complement]}, "b": x_payload()},
        )
        assert response.status_code == 422
        assert response.json()["detail"]["category"] == "validation"

    def test_dimension_category(self, client):
        qutrit = {
            "dim": 3,
            "elements": [matrix_to_pairs(np.eye(3) / 3), matrix_to_pairs(np.eye(3) * 2 / 3)],
        }
        response = client.post("/report", json={"a": z_payload(), "b": qutrit})
        assert response.status_code == 422
        assert response.json()["detail"]["category"] == "dimension"

    def test_random_state_is_deterministic(self, client):
        request = {
            "a": z_payload(0.8),
            "b": x_payload(),
            "state": {"kind": "random", "seed": 9},
        }
        first = client.post("/report", json=request).json()
        second = client.post("/report", json=request).json()
        assert first == second
        assert first["metadata"]["state"] == "random:9"

    def test_matrix_state(self, client):
        rho = matrix_to_pairs(np.array([[1.0, 0.0], [0.0, 0.0]]))
        response = client.post(
            "/report",
            json={
                "a": z_payload(),
                "b": x_payload(),
                "state": {"kind": "matrix", "dim": 2, "matrix": rho},
            },
        )
        assert response.status_code == 200
        assert response.json()["H_first"] == pytest.approx(0.0, abs=1e-9)

    def test_matrix_state_dimension_mismatch(self, client):
        rho = matrix_to_pairs(np.eye(3) / 3)
        response = client.post(
            "/report",
            json={
                "a": z_payload(),
                "b": x_payload(),
                "state": {"kind": "matrix", "dim": 3, "matrix": rho},
            },
        )
        assert response.status_code == 422
        assert response.json()["detail"]["category"] == "dimension"


class TestVerifyEndpoint:
    def test_small_run_passes(self, client):
        response = client.post("/verify", json={"trials": 25, "dim": 2, "seed": 11})
        assert response.status_code == 200
        body = response.json()
        assert body["passed"] is True
        assert len(body["checks"]) == 9
        for check in body["checks"]:
            assert check["worst_slack"] >= -1e-9

    def test_rejects_bad_dim(self, client):
        response = client.post("/verify", json={"trials": 5, "dim": 7})
        assert response.status_code == 422

    def test_deterministic_per_seed(self, client):
        a = client.post("/verify", json={"trials": 10, "dim": 2, "seed": 4}).json()
        b = client.post("/verify", json={"trials": 10, "dim": 2, "seed": 4}).json()
        assert a == b

    def test_thread_count_does_not_change_results(self, client):
        a = client.post("/verify", json={"trials": 10, "dim": 2, "seed": 4, "threads": 1}).json()
        b = client.post("/verify", json={"trials": 10, "dim": 2, "seed": 4, "threads": 4}).json()
        assert a == b
