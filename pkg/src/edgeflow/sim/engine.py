"""Deterministic evaluation of an assignment: per-task intervals, makespan,
end-device energy, and busy-hour cost under list-scheduling semantics."""

from __future__ import annotations

from dataclasses import dataclass, field

from edgeflow.environment import Environment
from edgeflow.errors import InconsistentAssignmentError
from edgeflow.objectives import Objectives
from edgeflow.sim.context import SimContext
from edgeflow.workflow import WorkflowDag

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
NO_DEADLINE = "no-deadline"


@dataclass(frozen=True)
class GanttEntry:
    task: str
    node: str
    start: float
    finish: float
    transfer_in: float  # longest single incoming transfer before start


@dataclass(frozen=True)
class Metrics:
    makespan: float
    energy: float  # joules, end devices only
    cost: float    # dollars, busy time on paid tiers

    def to_doc(self) -> dict:
        return {"makespan": self.makespan, "energy": self.energy, "cost": self.cost}


@dataclass(frozen=True)
class DeviceTimes:
    """Per-device partition of the makespan into the four power states."""

    node: str
    busy: float
    tx: float
    rx: float
    idle: float


@dataclass(frozen=True)
class Schedule:
    assignment: dict  # task id -> node id
    entries: tuple[GanttEntry, ...]
    device_times: tuple[DeviceTimes, ...] = field(default=())

    def to_doc(self) -> dict:
        return {
            "assignment": dict(sorted(self.assignment.items())),
            "entries": [
                {
                    "task": e.task,
                    "node": e.node,
                    "start": e.start,
                    "finish": e.finish,
                    "transfer_in": e.transfer_in,
                }
                for e in self.entries
            ],
            "device_times": [
                {"node": d.node, "busy": d.busy, "tx": d.tx, "rx": d.rx, "idle": d.idle}
                for d in self.device_times
            ],
        }


def simulate(
    dag: WorkflowDag,
    env: Environment,
    assignment: dict[str, str],
    plan=None,
    ctx: SimContext | None = None,
) -> tuple[Schedule, Metrics]:
    """Evaluate an assignment; raises InconsistentAssignmentError when a task
    is unassigned, maps to an unknown node, or leaves its offloaded tier."""
    if ctx is None:
        ctx = SimContext(dag, env, plan)
    extra = set(assignment) - set(ctx.task_ids)
    if extra:
        raise InconsistentAssignmentError(f"assignment names unknown tasks {sorted(extra)}")
    vec = ctx.assignment_vector(assignment)
    raw = ctx.simulate_raw(vec)
    entries = tuple(
        GanttEntry(
            task=ctx.task_ids[i],
            node=ctx.node_ids[vec[i]],
            start=raw["starts"][i],
            finish=raw["finishes"][i],
            transfer_in=raw["transfer_in"][i],
        )
        for i in ctx.topo_order
    )
    device_times = tuple(
        DeviceTimes(node=ctx.node_ids[n], busy=busy, tx=tx, rx=rx, idle=idle)
        for n, busy, tx, rx, idle in raw["device_times"]
    )
    schedule = Schedule(assignment=dict(assignment), entries=entries, device_times=device_times)
    metrics = Metrics(makespan=raw["makespan"], energy=raw["energy"], cost=raw["cost"])
    return schedule, metrics


def check_deadline(metrics: Metrics, objectives: Objectives) -> str:
    """Feasible iff makespan <= deadline; the boundary counts as feasible."""
    if objectives.deadline is None:
        return NO_DEADLINE
    return INFEASIBLE if metrics.makespan > objectives.deadline else FEASIBLE


def assignment_breakdown(schedule: Schedule) -> dict[str, int]:
    """Task count per node (the pie-chart payload)."""
    counts: dict[str, int] = {}
    for e in schedule.entries:
        counts[e.node] = counts.get(e.node, 0) + 1
    return dict(sorted(counts.items()))
