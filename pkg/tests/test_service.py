"""Control-plane service: plan lifecycle, runs, streams, reports, compare."""

import threading

import pytest

from edgeflow.control.docio import canonical_json_bytes
from edgeflow.control.service import EngineService
from edgeflow.control.store import PLANS, RUNS, SIMULATIONS, RunStore
from edgeflow.errors import (
    IncompatibleObjectiveError,
    MalformedXmlError,
    PlanNotFoundError,
    PlanNotSimulatedError,
    RunAlreadyActiveError,
    RunNotFoundError,
    UnboundTaskError,
)


@pytest.fixture()
def service(tmp_path):
    return EngineService(RunStore(tmp_path / "store"))


def plan_request(**overrides):
    request = {
        "workflow": {"kind": "pattern", "pattern": "hybrid", "tasks": 6, "seed": 3},
        "bindings": {"default": "pi-calculation"},
        "environment": {"counts": {"device": 1, "edge": 2, "cloud": 1}},
        "strategy": "energy-optimal",
        "scheduler": {"kind": "ga", "seed": 11, "params": {"population": 8, "iterations": 10}},
        "objectives": {"w_time": 1.0},
    }
    request.update(overrides)
    return request


def fast_bindings_request(**overrides):
    # tiny workloads so real runs finish in milliseconds
    request = plan_request(**overrides)
    request["bindings"] = {
        "tasks": {
            f"t{i:03d}": {"kind": "pi-calculation", "params": {"terms": 1000}}
            for i in range(6)
        }
    }
    return request


def test_build_plan_montage_20_tasks(service):
    plan = service.build_plan(plan_request(workflow={"kind": "montage", "width": 5}))
    assert len(plan.workflow.tasks) == 20
    assert service.store.exists(PLANS, plan.id)


def test_build_plan_rejects_heuristic_with_energy_objective(service):
    request = plan_request(
        scheduler={"kind": "fcfs", "seed": 1},
        objectives={"w_time": 0.0, "w_energy": 1.0},
    )
    with pytest.raises(IncompatibleObjectiveError):
        service.build_plan(request)


def test_build_plan_surfaces_dax_errors(service):
    request = plan_request(workflow={"kind": "dax", "xml": "<adag><job id='x'"})
    with pytest.raises(MalformedXmlError):
        service.build_plan(request)


def test_simulate_is_idempotent_and_persisted(service):
    plan = service.build_plan(plan_request())
    first = service.simulate_plan(plan.id)
    second = service.simulate_plan(plan.id)
    assert first == second
    stored = service.store.get(SIMULATIONS, plan.id)
    assert canonical_json_bytes(stored) == canonical_json_bytes(first)
    assert first["metrics"]["makespan"] > 0


def test_simulate_unknown_plan(service):
    with pytest.raises(PlanNotFoundError):
        service.simulate_plan("plan-404404")


def test_deadline_verdict_propagates(service):
    request = plan_request(objectives={"w_time": 1.0, "deadline": 1e-6})
    plan = service.build_plan(request)
    sim = service.simulate_plan(plan.id)
    assert sim["deadline_verdict"] == "infeasible"


def test_montage_20_ga_defaults_yields_positive_metrics(service):
    plan = service.build_plan(
        plan_request(
            workflow={"kind": "montage", "width": 5},
            environment=None,
            scheduler={"kind": "ga", "seed": 42},
        )
    )
    sim = service.simulate_plan(plan.id)
    assert sim["metrics"]["makespan"] > 0
    # energy-optimal offloads these tasks off-device, so paid tiers are busy
    assert sim["metrics"]["cost"] > 0


def test_execute_requires_simulation(service):
    plan = service.build_plan(fast_bindings_request())
    with pytest.raises(PlanNotSimulatedError):
        service.execute_plan_real(plan.id)


def test_execute_requires_bindings(service):
    request = plan_request()
    del request["bindings"]
    plan = service.build_plan(request)
    service.simulate_plan(plan.id)
    with pytest.raises(UnboundTaskError):
        service.execute_plan_real(plan.id)


def test_execute_streams_and_persists_in_same_order(service):
    plan = service.build_plan(fast_bindings_request())
    service.simulate_plan(plan.id)
    run_id = service.execute_plan_real(plan.id)
    streamed = [e.to_doc() for e in service.stream_events(run_id)]
    assert service.wait_run(run_id) == "succeeded"
    stored = service.store.get(RUNS, run_id)
    assert stored["outcome"] == "succeeded"
    assert [e for e in stored["events"]] == streamed
    # standby events come first, one per task
    standby = [e for e in streamed if e["status"] == "standby"]
    assert len(standby) == 6
    assert streamed[:6] == standby


def test_two_concurrent_subscribers_see_identical_sequences(service):
    plan = service.build_plan(fast_bindings_request())
    service.simulate_plan(plan.id)
    run_id = service.execute_plan_real(plan.id)
    results = [None, None]

    def consume(slot):
        results[slot] = [e.to_doc() for e in service.stream_events(run_id)]

    threads = [threading.Thread(target=consume, args=(i,)) for i in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join(timeout=30)
    assert results[0] == results[1]
    assert results[0] is not None and len(results[0]) >= 12


def test_replay_after_completion_is_full(service):
    plan = service.build_plan(fast_bindings_request())
    service.simulate_plan(plan.id)
    run_id = service.execute_plan_real(plan.id)
    service.wait_run(run_id)
    replay = [e.to_doc() for e in service.stream_events(run_id)]
    stored = service.store.get(RUNS, run_id)
    assert replay == stored["events"]


def test_one_active_run_per_plan(service, monkeypatch):
    import edgeflow.executor.runner as runner_mod

    plan = service.build_plan(fast_bindings_request())
    service.simulate_plan(plan.id)

    release = threading.Event()
    original = runner_mod.run_builtin

    def slow_builtin(binding):
        release.wait(10)
        return original(binding)

    monkeypatch.setattr(runner_mod, "run_builtin", slow_builtin)
    run_id = service.execute_plan_real(plan.id)
    with pytest.raises(RunAlreadyActiveError):
        service.execute_plan_real(plan.id)
    release.set()
    assert service.wait_run(run_id) == "succeeded"
    # after the run finished, a new one may start
    second = service.execute_plan_real(plan.id)
    assert service.wait_run(second) == "succeeded"
    assert second != run_id


def test_stream_unknown_run(service):
    with pytest.raises(RunNotFoundError):
        service.stream_events("run-424242")


def test_report_simulated_only_has_no_real_series(service):
    plan = service.build_plan(plan_request())
    service.simulate_plan(plan.id)
    report = service.build_report(plan.id)
    assert report["bar"] is None
    assert all(row["real"] is None for row in report["line"])
    assert all(row["simulated"] > 0 for row in report["line"])
    assert sum(report["pie"].values()) == 6
    assert len(report["gantt"]) == 6
    assert report["deadline_verdict"] == "no-deadline"


def test_report_with_run_includes_real_series(service):
    plan = service.build_plan(fast_bindings_request())
    service.simulate_plan(plan.id)
    run_id = service.execute_plan_real(plan.id)
    service.wait_run(run_id)
    report = service.build_report(plan.id, run_id)
    assert all(row["real"] is not None and row["real"] >= 0 for row in report["line"])
    assert {row["task"] for row in report["line"]} == {f"t{i:03d}" for i in range(6)}


def test_report_rejects_runs_of_other_plans(service):
    plan_a = service.build_plan(fast_bindings_request())
    service.simulate_plan(plan_a.id)
    run_a = service.execute_plan_real(plan_a.id)
    service.wait_run(run_a)
    plan_b = service.build_plan(plan_request(workflow={"kind": "montage", "width": 2}))
    service.simulate_plan(plan_b.id)
    with pytest.raises(RunNotFoundError):
        service.build_report(plan_b.id, run_a)


def test_compare_produces_rows_and_attaches_to_plan(service):
    plan = service.build_plan(plan_request())
    service.simulate_plan(plan.id)
    dataset = service.compare_algorithms(
        {
            "plan": plan.id,
            "algorithms": ["fcfs", "round-robin", "min-min", "max-min", "pso", "ga"],
            "seeds": [1, 2, 3],
            "params": {
                "pso": {"particles": 6, "iterations": 8},
                "ga": {"population": 6, "iterations": 8},
            },
        }
    )
    assert [row["algorithm"] for row in dataset["rows"]] == [
        "fcfs", "round-robin", "min-min", "max-min", "pso", "ga",
    ]
    for row in dataset["rows"]:
        assert row["time"] > 0 and row["energy"] > 0 and row["cost"] >= 0
    heuristic_best = min(row["time"] for row in dataset["rows"][:4])
    for row in dataset["rows"][4:]:
        assert row["time"] <= heuristic_best  # seeded metaheuristics never lose
    report = service.build_report(plan.id)
    assert report["bar"] == dataset


def test_compare_standalone_without_plan(service):
    dataset = service.compare_algorithms(
        {
            "workflow": {"kind": "montage", "width": 2},
            "algorithms": ["fcfs", "min-min"],
        }
    )
    assert len(dataset["rows"]) == 2
    assert dataset["tasks"] == 11


def test_compare_gates_heuristics_on_objectives(service):
    with pytest.raises(IncompatibleObjectiveError):
        service.compare_algorithms(
            {
                "workflow": {"kind": "montage", "width": 2},
                "objectives": {"w_time": 0.0, "w_energy": 1.0},
                "algorithms": ["fcfs"],
            }
        )


def test_compare_is_deterministic_given_seeds(service):
    request = {
        "workflow": {"kind": "pattern", "pattern": "hybrid", "tasks": 8, "seed": 4},
        "algorithms": ["pso", "ga"],
        "seeds": [5, 6],
        "params": {
            "pso": {"particles": 5, "iterations": 6},
            "ga": {"population": 6, "iterations": 6},
        },
    }
    first = service.compare_algorithms(request)
    second = service.compare_algorithms(request)
    assert first["rows"] == second["rows"]


def test_persistence_round_trip_after_restart(tmp_path):
    store_dir = tmp_path / "store"
    service = EngineService(RunStore(store_dir))
    plan = service.build_plan(fast_bindings_request())
    sim = service.simulate_plan(plan.id)
    run_id = service.execute_plan_real(plan.id)
    service.wait_run(run_id)
    plan_bytes = service.store.raw_bytes(PLANS, plan.id)
    run_bytes = service.store.raw_bytes(RUNS, run_id)

    reborn = EngineService(RunStore(store_dir))
    assert canonical_json_bytes(reborn.get_plan(plan.id).to_doc()) == plan_bytes
    assert canonical_json_bytes(reborn.get_run(run_id)) == run_bytes
    assert canonical_json_bytes(reborn.simulate_plan(plan.id)) == canonical_json_bytes(sim)
    replay = [e.to_doc() for e in reborn.stream_events(run_id)]
    assert replay == reborn.get_run(run_id)["events"]
