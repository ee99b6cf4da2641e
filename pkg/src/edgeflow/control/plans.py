"""Execution plans: the product of workflow + environment + strategy +
scheduler + objectives, and the request documents that build them."""

from __future__ import annotations

from dataclasses import dataclass, field

from edgeflow.dax import parse_dax
from edgeflow.environment import Environment, environment_from_doc, environment_to_doc
from edgeflow.errors import InvalidDocumentError
from edgeflow.generators import generate_montage, generate_pattern
from edgeflow.objectives import Objectives
from edgeflow.offloading import STRATEGIES
from edgeflow.scheduling.types import SCHEDULER_KINDS, check_objective_gate
from edgeflow.workflow import (
    BINDING_KINDS,
    TaskBinding,
    WorkflowDag,
    bind_tasks,
    dag_from_doc,
    dag_to_doc,
)

DEFAULT_SEED = 42


@dataclass(frozen=True)
class ExecutionPlan:
    id: str
    workflow: WorkflowDag
    environment: Environment
    strategy: str
    scheduler: str
    scheduler_params: dict | None
    objectives: Objectives
    seed: int
    created_at: str = ""

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "workflow": dag_to_doc(self.workflow),
            "environment": environment_to_doc(self.environment),
            "strategy": self.strategy,
            "scheduler": {
                "kind": self.scheduler,
                "params": self.scheduler_params,
                "seed": self.seed,
            },
            "objectives": self.objectives.to_doc(),
            "created_at": self.created_at,
        }

    @staticmethod
    def from_doc(doc: dict) -> "ExecutionPlan":
        sched = doc["scheduler"]
        return ExecutionPlan(
            id=doc["id"],
            workflow=dag_from_doc(doc["workflow"]),
            environment=environment_from_doc(doc["environment"]),
            strategy=doc["strategy"],
            scheduler=sched["kind"],
            scheduler_params=sched.get("params"),
            objectives=Objectives.from_doc(doc["objectives"]),
            seed=int(sched.get("seed", DEFAULT_SEED)),
            created_at=doc.get("created_at", ""),
        )


def workflow_from_request(doc: dict) -> WorkflowDag:
    """Materialize the workflow section of a plan request."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InvalidDocumentError("workflow section needs a 'kind'")
    kind = doc["kind"]
    if kind == "montage":
        return generate_montage(
            int(doc.get("width", 2)),
            float(doc.get("length_profile", 1.0)),
            float(doc.get("data_profile", 1.0)),
        )
    if kind == "pattern":
        return generate_pattern(
            doc.get("pattern", "sequential"),
            int(doc.get("tasks", 1)),
            int(doc.get("seed", 0)),
        )
    if kind == "dax":
        if "xml" not in doc:
            raise InvalidDocumentError("dax workflow needs an 'xml' field")
        return parse_dax(doc["xml"], name=doc.get("name", "workflow"))
    if kind == "inline":
        if "dag" not in doc:
            raise InvalidDocumentError("inline workflow needs a 'dag' field")
        return dag_from_doc(doc["dag"])
    raise InvalidDocumentError(f"unknown workflow kind {kind!r}")


def apply_bindings(dag: WorkflowDag, doc: dict | None) -> WorkflowDag:
    """Apply explicit per-task bindings, then fill the rest from 'default'."""
    if not doc:
        return dag
    per_task = doc.get("tasks") or {}
    if per_task:
        tasks = []
        for t in dag.tasks:
            spec = per_task.get(t.id)
            if spec is not None:
                from dataclasses import replace

                t = replace(
                    t, binding=TaskBinding(spec["kind"], dict(spec.get("params", {})))
                )
            tasks.append(t)
        dag = WorkflowDag(dag.name, tuple(tasks), dag.edges)
    default = doc.get("default")
    if default is not None:
        if default not in BINDING_KINDS:
            raise InvalidDocumentError(f"unknown default binding kind {default!r}")
        dag = bind_tasks(dag, default)
    return dag


def plan_from_request(plan_id: str, doc: dict, created_at: str = "") -> ExecutionPlan:
    """Validate a plan request document and materialize the plan.

    Raises the underlying module error for bad sections and
    IncompatibleObjectiveError when a heuristic scheduler is paired with a
    non-time objective.
    """
    if not isinstance(doc, dict):
        raise InvalidDocumentError("plan request must be a JSON object")
    for key in ("workflow", "scheduler"):
        if key not in doc:
            raise InvalidDocumentError(f"plan request is missing {key!r}")

    dag = workflow_from_request(doc["workflow"])
    dag = apply_bindings(dag, doc.get("bindings"))
    env = environment_from_doc(doc.get("environment") or {})

    strategy = doc.get("strategy", "energy-optimal")
    if strategy not in STRATEGIES:
        raise InvalidDocumentError(f"unknown offloading strategy {strategy!r}")

    sched = doc["scheduler"]
    if not isinstance(sched, dict) or "kind" not in sched:
        raise InvalidDocumentError("scheduler section needs a 'kind'")
    kind = sched["kind"]
    if kind not in SCHEDULER_KINDS:
        raise InvalidDocumentError(f"unknown scheduler kind {kind!r}")

    objectives = Objectives.from_doc(doc.get("objectives") or {"w_time": 1.0})
    check_objective_gate(kind, objectives)

    return ExecutionPlan(
        id=plan_id,
        workflow=dag,
        environment=env,
        strategy=strategy,
        scheduler=kind,
        scheduler_params=sched.get("params"),
        objectives=objectives,
        seed=int(sched.get("seed", DEFAULT_SEED)),
        created_at=created_at,
    )
