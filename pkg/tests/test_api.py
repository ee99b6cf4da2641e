"""HTTP API contract: routes, error codes, and the SSE event stream."""

import json

import pytest
from fastapi.testclient import TestClient

from edgeflow.control.api import create_app
from edgeflow.control.service import EngineService
from edgeflow.control.store import RunStore


@pytest.fixture()
def client(tmp_path):
    service = EngineService(RunStore(tmp_path / "store"))
    return TestClient(create_app(service))


PLAN_REQUEST = {
    "workflow": {"kind": "pattern", "pattern": "hybrid", "tasks": 5, "seed": 9},
    "bindings": {
        "tasks": {
            f"t{i:03d}": {"kind": "pi-calculation", "params": {"terms": 1000}}
            for i in range(5)
        }
    },
    "environment": {"counts": {"device": 1, "edge": 1, "cloud": 1}},
    "strategy": "energy-optimal",
    "scheduler": {"kind": "pso", "seed": 3, "params": {"particles": 5, "iterations": 6}},
    "objectives": {"w_time": 1.0},
}


def parse_sse(text: str):
    """[(event, data dict), ...] from a text/event-stream body."""
    messages = []
    for block in text.strip().split("\n\n"):
        lines = [ln for ln in block.splitlines() if ln.strip()]
        event = next(ln.split(": ", 1)[1] for ln in lines if ln.startswith("event: "))
        data = next(ln.split(": ", 1)[1] for ln in lines if ln.startswith("data: "))
        messages.append((event, json.loads(data)))
    return messages


def test_full_http_lifecycle(client):
    created = client.post("/plans", json=PLAN_REQUEST)
    assert created.status_code == 200
    plan_id = created.json()["plan_id"]
    assert created.json()["tasks"] == 5

    simulated = client.post(f"/plans/{plan_id}/simulate")
    assert simulated.status_code == 200
    assert simulated.json()["metrics"]["makespan"] > 0

    executed = client.post(f"/plans/{plan_id}/execute")
    assert executed.status_code == 200
    run_id = executed.json()["run_id"]

    stream = client.get(f"/runs/{run_id}/events")
    assert stream.status_code == 200
    assert stream.headers["content-type"].startswith("text/event-stream")
    messages = parse_sse(stream.text)
    assert messages[-1][0] == "end"
    assert messages[-1][1]["outcome"] == "succeeded"
    task_events = [m[1] for m in messages if m[0] == "task"]
    assert [e["status"] for e in task_events[:5]] == ["standby"] * 5
    assert len(task_events) == 15

    compared = client.post(
        "/compare",
        json={
            "plan": plan_id,
            "algorithms": ["fcfs", "min-min", "pso"],
            "seeds": [1],
            "params": {"pso": {"particles": 5, "iterations": 5}},
        },
    )
    assert compared.status_code == 200
    assert len(compared.json()["rows"]) == 3

    report = client.get(f"/plans/{plan_id}/report", params={"run": run_id})
    assert report.status_code == 200
    body = report.json()
    assert body["bar"]["rows"]
    assert sum(body["pie"].values()) == 5
    assert all(row["real"] is not None for row in body["line"])
    assert len(body["gantt"]) == 5


def test_unknown_plan_is_404(client):
    response = client.post("/plans/plan-932810/simulate")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "plan-not-found"


def test_unknown_run_is_404(client):
    response = client.get("/runs/run-932810/events")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "run-not-found"


def test_execute_before_simulate_is_409(client):
    plan_id = client.post("/plans", json=PLAN_REQUEST).json()["plan_id"]
    response = client.post(f"/plans/{plan_id}/execute")
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "plan-not-simulated"


def test_incompatible_objective_is_400(client):
    bad = dict(PLAN_REQUEST)
    bad["scheduler"] = {"kind": "min-min", "seed": 1}
    bad["objectives"] = {"w_time": 0.0, "w_cost": 1.0}
    response = client.post("/plans", json=bad)
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "incompatible-objective"


def test_malformed_dax_reports_code(client):
    bad = dict(PLAN_REQUEST)
    bad["workflow"] = {"kind": "dax", "xml": "<adag><job "}
    response = client.post("/plans", json=bad)
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "malformed-xml"


def test_get_plan_round_trip(client):
    plan_id = client.post("/plans", json=PLAN_REQUEST).json()["plan_id"]
    doc = client.get(f"/plans/{plan_id}").json()
    assert doc["id"] == plan_id
    assert doc["scheduler"]["kind"] == "pso"
    assert len(doc["workflow"]["tasks"]) == 5


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}
