"""Real execution of a simulated schedule on an in-process worker pool.

One worker slot per environment node runs that node's tasks in schedule
order; a task dispatches only when every parent completed and the slot is
free. Status transitions are Standby -> Running -> Completed|Failed; a failed
task strands its descendants in Standby while unrelated branches finish.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from edgeflow.environment import Environment
from edgeflow.errors import UnboundTaskError, WorkerPoolUnavailableError
from edgeflow.executor.builtins import run_builtin
from edgeflow.sim.engine import Schedule
from edgeflow.workflow import SIMULATED_ONLY, WorkflowDag

STANDBY = "standby"
RUNNING = "running"
COMPLETED = "completed"
FAILED = "failed"
STATUSES = (STANDBY, RUNNING, COMPLETED, FAILED)

SUCCEEDED = "succeeded"
OUTCOME_FAILED = "failed"
ABORTED = "aborted"


@dataclass(frozen=True)
class RunEvent:
    run_id: str
    task: str
    status: str
    timestamp: float  # seconds since run start, monotonic
    detail: str | None = None

    def to_doc(self) -> dict:
        return {
            "run_id": self.run_id,
            "task": self.task,
            "status": self.status,
            "timestamp": self.timestamp,
            "detail": self.detail,
        }


@dataclass
class RunRecord:
    run_id: str
    plan_id: str
    events: list[RunEvent] = field(default_factory=list)
    real_durations: dict = field(default_factory=dict)  # task id -> seconds
    outcome: str | None = None

    def to_doc(self) -> dict:
        return {
            "run_id": self.run_id,
            "plan_id": self.plan_id,
            "events": [e.to_doc() for e in self.events],
            "real_durations": dict(sorted(self.real_durations.items())),
            "outcome": self.outcome,
        }


class _EventLog:
    """Single serialized append stream with monotonic timestamps."""

    def __init__(self, run_id: str, record: RunRecord, sink=None):
        self.run_id = run_id
        self.record = record
        self.sink = sink
        self._lock = threading.Lock()
        self._t0 = time.monotonic()

    def emit(self, task: str, status: str, detail: str | None = None) -> RunEvent:
        with self._lock:
            event = RunEvent(
                run_id=self.run_id,
                task=task,
                status=status,
                timestamp=time.monotonic() - self._t0,
                detail=detail,
            )
            self.record.events.append(event)
        if self.sink is not None:
            self.sink(event)
        return event


def execute_plan(
    dag: WorkflowDag,
    env: Environment,
    schedule: Schedule,
    event_sink=None,
    run_id: str = "run",
    plan_id: str = "plan",
) -> RunRecord:
    """Run every bound task for real; blocks until the run is terminal."""
    for t in dag.tasks:
        if t.binding is None or t.binding.kind == SIMULATED_ONLY:
            raise UnboundTaskError(
                f"task {t.id!r} is not bound to a runnable computing task"
            )
    known_nodes = {n.id for n in env.nodes}
    per_node: dict[str, list[str]] = {}
    for entry in schedule.entries:  # entries are in commit order per node
        if entry.node not in known_nodes:
            raise WorkerPoolUnavailableError(f"no worker for node {entry.node!r}")
        per_node.setdefault(entry.node, []).append(entry.task)
    if set(schedule.assignment) != {t.id for t in dag.tasks}:
        raise WorkerPoolUnavailableError("schedule does not cover the workflow")

    record = RunRecord(run_id=run_id, plan_id=plan_id)
    log = _EventLog(run_id, record, event_sink)
    if not dag.tasks:
        record.outcome = SUCCEEDED
        return record

    parents: dict[str, list[str]] = {t.id: [] for t in dag.tasks}
    for e in dag.edges:
        parents[e.child].append(e.parent)
    done_events = {t.id: threading.Event() for t in dag.tasks}
    results: dict[str, str] = {}  # task id -> terminal-ish state
    state_lock = threading.Lock()

    for t in dag.tasks:
        log.emit(t.id, STANDBY)

    bindings = {t.id: t.binding for t in dag.tasks}

    def worker(node_id: str, task_ids: list[str]) -> None:
        for tid in task_ids:
            for pid in parents[tid]:
                done_events[pid].wait()
            ok = all(results.get(pid) == COMPLETED for pid in parents[tid])
            if not ok:
                # an ancestor failed: stay in Standby, release waiters
                with state_lock:
                    results[tid] = "aborted"
                done_events[tid].set()
                continue
            log.emit(tid, RUNNING)
            started = time.monotonic()
            try:
                summary = run_builtin(bindings[tid])
            except Exception as exc:
                with state_lock:
                    record.real_durations[tid] = time.monotonic() - started
                    results[tid] = FAILED
                log.emit(tid, FAILED, detail=str(exc))
            else:
                with state_lock:
                    record.real_durations[tid] = time.monotonic() - started
                    results[tid] = COMPLETED
                log.emit(tid, COMPLETED, detail=summary.get("digest"))
            done_events[tid].set()

    threads = [
        threading.Thread(target=worker, args=(node_id, tasks), daemon=True)
        for node_id, tasks in sorted(per_node.items())
    ]
    for th in threads:
        th.start()
    for th in threads:
        th.join()

    statuses = [results.get(t.id) for t in dag.tasks]
    record.outcome = SUCCEEDED if all(s == COMPLETED for s in statuses) else OUTCOME_FAILED
    return record
