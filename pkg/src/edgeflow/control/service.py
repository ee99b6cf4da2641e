"""The controller: composes parsing, offloading, scheduling, simulation and
real execution into plans and runs; persists records; feeds event streams."""

from __future__ import annotations

import statistics
import threading
from datetime import datetime, timezone

from edgeflow.control.plans import DEFAULT_SEED, ExecutionPlan, plan_from_request, workflow_from_request
from edgeflow.control.store import COMPARES, PLANS, RUNS, SIMULATIONS, RunStore
from edgeflow.environment import environment_from_doc
from edgeflow.errors import (
    InvalidDocumentError,
    PlanNotFoundError,
    PlanNotSimulatedError,
    RunAlreadyActiveError,
    RunNotFoundError,
    RunNotTerminalError,
    UnboundTaskError,
)
from edgeflow.executor.runner import ABORTED, RunEvent, RunRecord, execute_plan
from edgeflow.objectives import Objectives
from edgeflow.offloading import offload
from edgeflow.scheduling import GaParams, PsoParams, schedule
from edgeflow.scheduling.types import GA, HEURISTICS, PSO, SCHEDULER_KINDS, check_objective_gate
from edgeflow.sim import SimContext, Schedule, check_deadline, simulate
from edgeflow.sim.engine import GanttEntry
from edgeflow.workflow import SIMULATED_ONLY


class _RunHandle:
    """Live event buffer for one run: replay-then-follow subscriptions."""

    def __init__(self, run_id: str):
        self.run_id = run_id
        self.events: list[RunEvent] = []
        self.outcome: str | None = None
        self._cond = threading.Condition()

    def append(self, event: RunEvent) -> None:
        with self._cond:
            self.events.append(event)
            self._cond.notify_all()

    def finish(self, outcome: str) -> None:
        with self._cond:
            self.outcome = outcome
            self._cond.notify_all()

    def wait_started(self, n_events: int, timeout: float = 30.0) -> None:
        with self._cond:
            self._cond.wait_for(
                lambda: self.outcome is not None or len(self.events) >= n_events,
                timeout=timeout,
            )

    def wait_terminal(self, timeout: float | None = None) -> str | None:
        with self._cond:
            self._cond.wait_for(lambda: self.outcome is not None, timeout=timeout)
            return self.outcome

    def subscribe(self):
        """Yield every event in log order, then return once terminal."""
        cursor = 0
        while True:
            with self._cond:
                self._cond.wait_for(
                    lambda: len(self.events) > cursor or self.outcome is not None
                )
                chunk = self.events[cursor:]
                cursor += len(chunk)
                done = self.outcome is not None and cursor >= len(self.events)
                outcome = self.outcome
            for event in chunk:
                yield event
            if done:
                return outcome


def _scheduler_params(kind: str, params_doc: dict | None, seed: int):
    if kind == PSO:
        return PsoParams(seed=seed, **(params_doc or {}))
    if kind == GA:
        return GaParams(seed=seed, **(params_doc or {}))
    return None


class EngineService:
    """Headless engine facade; the HTTP API and the CLI both sit on top."""

    def __init__(self, store: RunStore):
        self.store = store
        self._lock = threading.Lock()
        self._active: dict[str, str] = {}  # plan id -> run id
        self._handles: dict[str, _RunHandle] = {}

    # --- plans ----------------------------------------------------------------

    def build_plan(self, request_doc: dict) -> ExecutionPlan:
        plan_id = self.store.next_id(PLANS)
        created = datetime.now(timezone.utc).isoformat(timespec="seconds")
        plan = plan_from_request(plan_id, request_doc, created_at=created)
        self.store.put(PLANS, plan_id, plan.to_doc())
        return plan

    def get_plan(self, plan_id: str) -> ExecutionPlan:
        doc = self.store.get(PLANS, plan_id)
        if doc is None:
            raise PlanNotFoundError(f"plan {plan_id!r} not found")
        return ExecutionPlan.from_doc(doc)

    # --- simulation -----------------------------------------------------------

    def simulate_plan(self, plan_id: str) -> dict:
        """offload -> schedule -> simulate -> deadline verdict; idempotent per
        (plan, seed): a repeat run must reproduce the stored document."""
        plan = self.get_plan(plan_id)
        doc = self._simulate_to_doc(plan)
        existing = self.store.get(SIMULATIONS, plan_id)
        if existing is not None:
            if existing != doc:
                raise InvalidDocumentError(
                    f"simulation of {plan_id!r} is not reproducible; store is inconsistent"
                )
            return existing
        self.store.put(SIMULATIONS, plan_id, doc)
        return doc

    def _simulate_to_doc(self, plan: ExecutionPlan) -> dict:
        offloading = offload(plan.workflow, plan.environment, plan.strategy)
        ctx = SimContext(plan.workflow, plan.environment, offloading)
        params = _scheduler_params(plan.scheduler, plan.scheduler_params, plan.seed)
        assignment = schedule(
            plan.workflow,
            plan.environment,
            offloading,
            plan.scheduler,
            plan.objectives,
            params=params,
            seed=plan.seed,
            ctx=ctx,
        )
        sched, metrics = simulate(
            plan.workflow, plan.environment, assignment, offloading, ctx=ctx
        )
        verdict = check_deadline(metrics, plan.objectives)
        return {
            "plan_id": plan.id,
            "seed": plan.seed,
            "scheduler": plan.scheduler,
            "offloading": offloading.to_doc(),
            "assignment": dict(sorted(assignment.items())),
            "schedule": sched.to_doc(),
            "metrics": metrics.to_doc(),
            "deadline_verdict": verdict,
        }

    def get_simulation(self, plan_id: str) -> dict:
        doc = self.store.get(SIMULATIONS, plan_id)
        if doc is None:
            raise PlanNotSimulatedError(f"plan {plan_id!r} has not been simulated")
        return doc

    # --- real execution ---------------------------------------------------------

    def execute_plan_real(self, plan_id: str) -> str:
        """Start an asynchronous real run; returns the run id immediately.
        At most one active run per plan."""
        plan = self.get_plan(plan_id)
        sim_doc = self.get_simulation(plan_id)
        for t in plan.workflow.tasks:
            if t.binding is None or t.binding.kind == SIMULATED_ONLY:
                raise UnboundTaskError(f"task {t.id!r} is not bound to a runnable computing task")

        with self._lock:
            if plan_id in self._active:
                raise RunAlreadyActiveError(
                    f"plan {plan_id!r} already has an active run {self._active[plan_id]!r}"
                )
            run_id = self.store.next_id(RUNS)
            handle = _RunHandle(run_id)
            self._active[plan_id] = run_id
            self._handles[run_id] = handle

        sched = _schedule_from_doc(sim_doc["schedule"])
        thread = threading.Thread(
            target=self._drive_run,
            args=(plan, sched, run_id, handle),
            daemon=True,
        )
        thread.start()
        handle.wait_started(len(plan.workflow.tasks))
        return run_id

    def _drive_run(self, plan: ExecutionPlan, sched: Schedule, run_id: str, handle: _RunHandle) -> None:
        try:
            record = execute_plan(
                plan.workflow,
                plan.environment,
                sched,
                event_sink=handle.append,
                run_id=run_id,
                plan_id=plan.id,
            )
        except Exception as exc:
            record = RunRecord(
                run_id=run_id,
                plan_id=plan.id,
                events=list(handle.events),
                outcome=ABORTED,
            )
            record_doc = record.to_doc()
            record_doc["error"] = str(exc)
            self.store.put(RUNS, run_id, record_doc)
            handle.finish(ABORTED)
            with self._lock:
                self._active.pop(plan.id, None)
            return
        self.store.put(RUNS, run_id, record.to_doc())
        handle.finish(record.outcome)
        with self._lock:
            self._active.pop(plan.id, None)

    def wait_run(self, run_id: str, timeout: float | None = None) -> str | None:
        handle = self._handles.get(run_id)
        if handle is None:
            doc = self.store.get(RUNS, run_id)
            if doc is None:
                raise RunNotFoundError(f"run {run_id!r} not found")
            return doc["outcome"]
        return handle.wait_terminal(timeout)

    def get_run(self, run_id: str) -> dict:
        doc = self.store.get(RUNS, run_id)
        if doc is not None:
            return doc
        handle = self._handles.get(run_id)
        if handle is None:
            raise RunNotFoundError(f"run {run_id!r} not found")
        return {
            "run_id": run_id,
            "plan_id": None,
            "events": [e.to_doc() for e in handle.events],
            "real_durations": {},
            "outcome": handle.outcome,
        }

    def stream_events(self, run_id: str):
        """Replay-then-follow iterator over one run's events; the iterator
        ends after the run's terminal event."""
        handle = self._handles.get(run_id)
        if handle is not None:
            return handle.subscribe()
        doc = self.store.get(RUNS, run_id)
        if doc is None:
            raise RunNotFoundError(f"run {run_id!r} not found")

        def replay():
            for e in doc["events"]:
                yield RunEvent(
                    run_id=e["run_id"],
                    task=e["task"],
                    status=e["status"],
                    timestamp=e["timestamp"],
                    detail=e.get("detail"),
                )
            return doc["outcome"]

        return replay()

    def run_outcome(self, run_id: str) -> str | None:
        handle = self._handles.get(run_id)
        if handle is not None:
            return handle.outcome
        doc = self.store.get(RUNS, run_id)
        if doc is None:
            raise RunNotFoundError(f"run {run_id!r} not found")
        return doc["outcome"]

    # --- reports ----------------------------------------------------------------

    def build_report(self, plan_id: str, run_id: str | None = None) -> dict:
        plan = self.get_plan(plan_id)
        sim_doc = self.get_simulation(plan_id)
        run_doc = None
        if run_id is not None:
            outcome = self.run_outcome(run_id)
            if outcome is None:
                raise RunNotTerminalError(f"run {run_id!r} is still active")
            run_doc = self.get_run(run_id)
            if run_doc.get("plan_id") != plan_id:
                raise RunNotFoundError(f"run {run_id!r} does not belong to plan {plan_id!r}")

        entries = sim_doc["schedule"]["entries"]
        pie: dict[str, int] = {}
        for e in entries:
            pie[e["node"]] = pie.get(e["node"], 0) + 1
        durations = (run_doc or {}).get("real_durations", {})
        line = [
            {
                "task": e["task"],
                "simulated": e["finish"] - e["start"],
                "real": durations.get(e["task"]),
            }
            for e in sorted(entries, key=lambda e: e["task"])
        ]
        bar = self.store.get(COMPARES, plan_id)
        return {
            "plan_id": plan_id,
            "run_id": run_id,
            "bar": bar,
            "pie": dict(sorted(pie.items())),
            "line": line,
            "gantt": entries,
            "deadline_verdict": sim_doc["deadline_verdict"],
        }

    # --- algorithm comparison ------------------------------------------------------

    def compare_algorithms(self, request_doc: dict) -> dict:
        """Run several schedulers on one workflow/environment and tabulate
        {time, energy, cost} per algorithm; PSO/GA report the per-metric
        median over the given seeds. Optionally attaches to a plan."""
        plan_id = request_doc.get("plan")
        if plan_id is not None:
            plan = self.get_plan(plan_id)
            dag, env = plan.workflow, plan.environment
            strategy = request_doc.get("strategy", plan.strategy)
            objectives = (
                Objectives.from_doc(request_doc["objectives"])
                if request_doc.get("objectives")
                else plan.objectives
            )
            default_seeds = [plan.seed]
        else:
            if "workflow" not in request_doc:
                raise InvalidDocumentError("compare request needs 'workflow' or 'plan'")
            dag = workflow_from_request(request_doc["workflow"])
            env = environment_from_doc(request_doc.get("environment") or {})
            strategy = request_doc.get("strategy", "energy-optimal")
            objectives = Objectives.from_doc(
                request_doc.get("objectives") or {"w_time": 1.0}
            )
            default_seeds = [DEFAULT_SEED]
        algorithms = request_doc.get("algorithms") or list(SCHEDULER_KINDS)
        seeds = [int(s) for s in (request_doc.get("seeds") or default_seeds)]
        if not seeds:
            raise InvalidDocumentError("compare request needs at least one seed")
        for kind in algorithms:
            check_objective_gate(kind, objectives)

        offloading = offload(dag, env, strategy)
        ctx = SimContext(dag, env, offloading)
        params_docs = request_doc.get("params") or {}
        rows = []
        for kind in algorithms:
            if kind in HEURISTICS:
                assignment = schedule(dag, env, offloading, kind, objectives, ctx=ctx)
                _, metrics = simulate(dag, env, assignment, offloading, ctx=ctx)
                rows.append(
                    {
                        "algorithm": kind,
                        "time": metrics.makespan,
                        "energy": metrics.energy,
                        "cost": metrics.cost,
                    }
                )
            else:
                samples = []
                for seed in seeds:
                    params = _scheduler_params(kind, params_docs.get(kind), seed)
                    assignment = schedule(
                        dag, env, offloading, kind, objectives, params=params, seed=seed, ctx=ctx
                    )
                    _, metrics = simulate(dag, env, assignment, offloading, ctx=ctx)
                    samples.append(metrics)
                rows.append(
                    {
                        "algorithm": kind,
                        "time": statistics.median(m.makespan for m in samples),
                        "energy": statistics.median(m.energy for m in samples),
                        "cost": statistics.median(m.cost for m in samples),
                    }
                )
        dataset = {
            "workflow": dag.name,
            "tasks": len(dag.tasks),
            "strategy": strategy,
            "objectives": objectives.to_doc(),
            "seeds": seeds,
            "rows": rows,
        }
        if plan_id is not None:
            self.store.put(COMPARES, plan_id, dataset, overwrite=True)
        else:
            self.store.put(COMPARES, self.store.next_id(COMPARES), dataset)
        return dataset


def _schedule_from_doc(doc: dict) -> Schedule:
    return Schedule(
        assignment=dict(doc["assignment"]),
        entries=tuple(
            GanttEntry(
                task=e["task"],
                node=e["node"],
                start=e["start"],
                finish=e["finish"],
                transfer_in=e["transfer_in"],
            )
            for e in doc["entries"]
        ),
    )
