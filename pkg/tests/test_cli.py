"""CLI contract: subcommands, JSON outputs, exit codes, error documents."""

import json

import pytest

from edgeflow.control.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def store(tmp_path):
    return str(tmp_path / "store")


def test_plan_simulate_run_report_compare(store, tmp_path, capsys):
    code, out, err = run_cli(
        capsys,
        "--store", store, "plan",
        "--pattern", "hybrid", "--tasks", "6", "--pattern-seed", "3",
        "--scheduler", "pso", "--seed", "11",
        "--scheduler-params", '{"particles": 5, "iterations": 6}',
        "--bind", "pi-calculation",
        "--device-count", "1", "--edge-count", "1", "--cloud-count", "1",
    )
    assert code == 0, err
    plan_id = json.loads(out)["plan_id"]

    code, out, _ = run_cli(capsys, "--store", store, "simulate", plan_id)
    assert code == 0
    sim = json.loads(out)
    assert sim["metrics"]["makespan"] > 0

    code, out, err = run_cli(capsys, "--store", store, "run", plan_id, "--events")
    assert code == 0
    summary = json.loads(out)
    assert summary["outcome"] == "succeeded"
    events = [json.loads(line) for line in err.strip().splitlines()]
    assert events, "expected --events to print the stream"
    assert all(e["status"] in ("standby", "running", "completed", "failed") for e in events)

    code, out, _ = run_cli(
        capsys,
        "--store", store, "compare", "--plan", plan_id,
        "--algorithms", "fcfs,min-min", "--seeds", "1",
    )
    assert code == 0
    assert len(json.loads(out)["rows"]) == 2

    out_file = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys,
        "--store", store, "report", plan_id,
        "--run", summary["run_id"], "--out", str(out_file),
    )
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["bar"] is not None
    assert sum(report["pie"].values()) == 6
    assert all(row["real"] is not None for row in report["line"])


def test_cli_error_document_and_exit_code(store, capsys):
    code, out, err = run_cli(capsys, "--store", store, "simulate", "plan-000042")
    assert code == 1
    assert out == ""
    error = json.loads(err)["error"]
    assert error["code"] == "plan-not-found"


def test_cli_rejects_heuristic_energy_combination(store, capsys):
    code, _, err = run_cli(
        capsys,
        "--store", store, "plan",
        "--montage-width", "2",
        "--scheduler", "fcfs", "--w-time", "0", "--w-energy", "1",
    )
    assert code == 1
    assert json.loads(err)["error"]["code"] == "incompatible-objective"


def test_cli_requires_exactly_one_workflow_source(store, capsys):
    code, _, err = run_cli(
        capsys,
        "--store", store, "plan",
        "--montage-width", "3", "--pattern", "sequential",
    )
    assert code == 1
    assert "error" in json.loads(err)


def test_cli_dax_source(store, tmp_path, capsys):
    from edgeflow.dax import serialize_dax
    from edgeflow.generators import generate_montage

    dax_file = tmp_path / "wf.xml"
    dax_file.write_text(serialize_dax(generate_montage(2)))
    code, out, _ = run_cli(
        capsys,
        "--store", store, "plan", "--dax", str(dax_file),
        "--scheduler", "min-min",
    )
    assert code == 0
    assert json.loads(out)["tasks"] == 11


def test_cli_deterministic_simulations(store, capsys):
    code, out, _ = run_cli(
        capsys,
        "--store", store, "plan", "--montage-width", "3",
        "--scheduler", "ga", "--seed", "5",
        "--scheduler-params", '{"population": 6, "iterations": 5}',
    )
    plan_id = json.loads(out)["plan_id"]
    code, first, _ = run_cli(capsys, "--store", store, "simulate", plan_id)
    code, second, _ = run_cli(capsys, "--store", store, "simulate", plan_id)
    assert first == second
