from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from helixweb.jsonio import helix_to_json
from helixweb.service import create_app
from helixweb import seed_helix


@pytest.fixture
def client():
    return TestClient(create_app())


def create_seed_session(client, name="quadric"):
    response = client.post("/sessions", json={"seed": name})
    assert response.status_code == 200
    return response.json()


class TestHealth:
    def test_healthz(self, client):
        assert client.get("/healthz").status_code == 200

    def test_seeds(self, client):
        assert client.get("/seeds").json()["seeds"] == ["p2", "quadric", "dp1", "dp2"]


class TestSessions:
    def test_create_from_seed(self, client):
        state = create_seed_session(client)
        assert state["quiver"]["arrows"] == [
            [0, 2, 2, 0],
            [0, 0, 0, 2],
            [0, 0, 0, 2],
            [4, 0, 0, 0],
        ]
        assert state["b_matrix"]["b"][0] == [0, 2, 2, -4]
        assert len(state["objects"]) == 4

    def test_create_from_explicit_helix(self, client):
        body = helix_to_json(seed_helix("dp1"))
        response = client.post("/sessions", json=body)
        assert response.status_code == 200
        assert response.json()["helix"]["period"] == 4

    def test_get_state(self, client):
        state = create_seed_session(client)
        fetched = client.get(f"/sessions/{state['id']}")
        assert fetched.status_code == 200
        assert fetched.json()["quiver"] == state["quiver"]

    def test_unknown_session(self, client):
        assert client.get("/sessions/absent").status_code == 404

    def test_malformed_body(self, client):
        response = client.post("/sessions", content=b"{oops")
        assert response.status_code == 400
        assert response.json()["reason"] == "malformed_body"

    def test_invalid_helix(self, client):
        response = client.post(
            "/sessions",
            json={
                "surface": {"kind": "quadric"},
                "objects": [
                    {"rank": 1, "c1": [0, 0], "ch2_x2": 0, "shift": 0},
                    {"rank": 1, "c1": [1, 0], "ch2_x2": 0, "shift": 0},
                    {"rank": 1, "c1": [3, 1], "ch2_x2": 6, "shift": 0},
                    {"rank": 1, "c1": [4, 1], "ch2_x2": 8, "shift": 0},
                ],
            },
        )
        assert response.status_code == 422
        assert response.json()["reason"] == "not_geometric"


class TestTilt:
    def test_tilt_gives_cycle(self, client):
        state = create_seed_session(client)
        response = client.post(
            f"/sessions/{state['id']}/tilt", json={"vertex": 2, "direction": "left"}
        )
        assert response.status_code == 200
        data = response.json()
        flat = sorted(x for row in data["quiver"]["arrows"] for x in row if x)
        assert flat == [2, 2, 2, 2]
        assert data["cross_check"]["match"] is True
        assert data["history_length"] == 1

    def test_tilt_then_undo(self, client):
        state = create_seed_session(client)
        sid = state["id"]
        client.post(f"/sessions/{sid}/tilt", json={"vertex": 1})
        response = client.post(f"/sessions/{sid}/undo")
        assert response.status_code == 200
        data = response.json()
        assert data["helix"] == state["helix"]
        assert data["history_length"] == 0

    def test_undo_empty(self, client):
        state = create_seed_session(client)
        response = client.post(f"/sessions/{state['id']}/undo")
        assert response.status_code == 422
        assert response.json()["reason"] == "history_empty"

    def test_bad_vertex(self, client):
        state = create_seed_session(client)
        response = client.post(f"/sessions/{state['id']}/tilt", json={"vertex": 11})
        assert response.status_code == 422
        assert response.json()["reason"] == "bad_vertex"

    def test_missing_vertex(self, client):
        state = create_seed_session(client)
        response = client.post(f"/sessions/{state['id']}/tilt", json={})
        assert response.status_code == 400

    def test_dp2_all_vertices_match(self, client):
        state = create_seed_session(client, "dp2")
        sid = state["id"]
        for vertex in range(5):
            response = client.post(f"/sessions/{sid}/tilt", json={"vertex": vertex})
            assert response.status_code == 200
            assert response.json()["cross_check"]["match"] is True
            client.post(f"/sessions/{sid}/undo")


class TestHeightEndpoint:
    def test_height_list(self, client):
        state = create_seed_session(client)
        response = client.get(
            f"/sessions/{state['id']}/height", params={"vertex": 3, "bound": 3}
        )
        assert response.status_code == 200
        data = response.json()
        assert data["vertex"] == 3
        assert all(v[3] == 0 for v in data["height_functions"])

    def test_bad_vertex(self, client):
        state = create_seed_session(client)
        response = client.get(
            f"/sessions/{state['id']}/height", params={"vertex": 9}
        )
        assert response.status_code == 422

    def test_bound_cap(self, client):
        state = create_seed_session(client)
        response = client.get(
            f"/sessions/{state['id']}/height", params={"vertex": 0, "bound": 50}
        )
        assert response.status_code == 422
        assert response.json()["reason"] == "bad_bound"


class TestWebEndpoint:
    def test_web(self, client):
        state = create_seed_session(client)
        response = client.get(f"/sessions/{state['id']}/web", params={"depth": 1})
        assert response.status_code == 200
        data = response.json()
        assert len(data["nodes"]) == 4

    def test_depth_cap(self, client):
        state = create_seed_session(client)
        response = client.get(f"/sessions/{state['id']}/web", params={"depth": 9})
        assert response.status_code == 422


class TestSnapshots:
    def test_snapshot_written(self, tmp_path):
        client = TestClient(create_app(state_dir=str(tmp_path)))
        state = create_seed_session(client)
        files = list(tmp_path.glob("*.json"))
        assert len(files) == 1
        client.post(f"/sessions/{state['id']}/tilt", json={"vertex": 0})
        import json

        payload = json.loads(files[0].read_text(encoding="utf-8"))
        assert len(payload["history"]) == 1
