"""Workflow DAG model: tasks, data edges, validation and task binding."""

from __future__ import annotations

import heapq
import zlib
from dataclasses import dataclass, field, replace

from edgeflow.errors import CyclicWorkflowError, InvalidWorkflowError

# Binding kinds (external names, used in documents and CLI flags)
PI_CALCULATION = "pi-calculation"
KMP_MATCH = "kmp-match"
LEVENSHTEIN_DISTANCE = "levenshtein-distance"
SELECTION_SORT = "selection-sort"
SIMULATED_ONLY = "simulated-only"

BINDING_KINDS = (
    PI_CALCULATION,
    KMP_MATCH,
    LEVENSHTEIN_DISTANCE,
    SELECTION_SORT,
    SIMULATED_ONLY,
)

# Kinds that can run on a real worker (everything except simulated-only)
RUNNABLE_KINDS = BINDING_KINDS[:-1]


@dataclass(frozen=True)
class TaskBinding:
    """Binds an abstract task to one of the built-in computing tasks.

    ``params`` holds kind-specific integer scalars (term counts, string
    lengths, array length, input seed). ``simulated-only`` bindings are legal
    for simulation but rejected by the real executor.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in BINDING_KINDS:
            raise InvalidWorkflowError(f"unknown binding kind: {self.kind!r}")
        for key, value in self.params.items():
            if not isinstance(value, int) or value < 0:
                raise InvalidWorkflowError(
                    f"binding param {key}={value!r} must be an integer >= 0"
                )


@dataclass(frozen=True)
class TaskSpec:
    """One workflow task: compute demand in MI plus an optional binding."""

    id: str
    label: str
    length: float  # millions of instructions, > 0
    binding: TaskBinding | None = None

    def __post_init__(self):
        if not self.id:
            raise InvalidWorkflowError("task id must be non-empty")
        if not self.length > 0:
            raise InvalidWorkflowError(f"task {self.id!r}: length must be > 0")


@dataclass(frozen=True)
class DataEdge:
    """A dependency edge carrying ``bytes`` of data from parent to child."""

    parent: str
    child: str
    bytes: int

    def __post_init__(self):
        if self.parent == self.child:
            raise InvalidWorkflowError(f"self edge on {self.parent!r}")
        if self.bytes < 0:
            raise InvalidWorkflowError(
                f"edge {self.parent}->{self.child}: bytes must be >= 0"
            )


@dataclass(frozen=True)
class WorkflowDag:
    name: str
    tasks: tuple[TaskSpec, ...]
    edges: tuple[DataEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "tasks", tuple(self.tasks))
        object.__setattr__(self, "edges", tuple(self.edges))
        ids = [t.id for t in self.tasks]
        id_set = set(ids)
        if len(id_set) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InvalidWorkflowError(f"duplicate task ids: {dupes}")
        seen_pairs = set()
        for edge in self.edges:
            if edge.parent not in id_set or edge.child not in id_set:
                raise InvalidWorkflowError(
                    f"edge {edge.parent}->{edge.child} references unknown task"
                )
            pair = (edge.parent, edge.child)
            if pair in seen_pairs:
                raise InvalidWorkflowError(f"duplicate edge {pair}")
            seen_pairs.add(pair)

    def task(self, task_id: str) -> TaskSpec:
        for t in self.tasks:
            if t.id == task_id:
                return t
        raise KeyError(task_id)

    def in_edges(self, task_id: str) -> list[DataEdge]:
        return [e for e in self.edges if e.child == task_id]

    def out_edges(self, task_id: str) -> list[DataEdge]:
        return [e for e in self.edges if e.parent == task_id]


def validate(dag: WorkflowDag) -> list[str]:
    """Return a deterministic topological order of task ids.

    Kahn's algorithm with a min-heap on the task id, so ready-set ties always
    break toward the ascending id. Raises CyclicWorkflowError if no
    topological order exists.
    """
    indegree = {t.id: 0 for t in dag.tasks}
    children: dict[str, list[str]] = {t.id: [] for t in dag.tasks}
    for e in dag.edges:
        indegree[e.child] += 1
        children[e.parent].append(e.child)

    ready = [tid for tid, deg in indegree.items() if deg == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        tid = heapq.heappop(ready)
        order.append(tid)
        for child in children[tid]:
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(ready, child)
    if len(order) != len(dag.tasks):
        stuck = sorted(tid for tid, deg in indegree.items() if deg > 0)
        raise CyclicWorkflowError(f"workflow {dag.name!r} has a cycle through {stuck}")
    return order


def binding_seed(task_id: str) -> int:
    """Stable per-task seed for built-in task inputs (crc32, not hash())."""
    return zlib.crc32(task_id.encode("utf-8"))


def bind_tasks(dag: WorkflowDag, default_kind: str, calibration=None) -> WorkflowDag:
    """Fill every unbound task with ``default_kind``.

    Parameters are derived from the task length through the executor's
    calibration map; already-bound tasks are left untouched.
    """
    from edgeflow.executor.calibration import CalibrationConfig, calibrate

    if calibration is None:
        calibration = CalibrationConfig()
    bound = []
    for t in dag.tasks:
        if t.binding is None:
            params = calibrate(t.length, default_kind, calibration)
            if default_kind != SIMULATED_ONLY:
                params["seed"] = binding_seed(t.id)
            t = replace(t, binding=TaskBinding(default_kind, params))
        bound.append(t)
    return WorkflowDag(dag.name, tuple(bound), dag.edges)


# --- native structured-text (JSON document) form ----------------------------

def dag_to_doc(dag: WorkflowDag) -> dict:
    return {
        "name": dag.name,
        "tasks": [
            {
                "id": t.id,
                "label": t.label,
                "length": t.length,
                "binding": None
                if t.binding is None
                else {"kind": t.binding.kind, "params": dict(t.binding.params)},
            }
            for t in dag.tasks
        ],
        "edges": [
            {"parent": e.parent, "child": e.child, "bytes": e.bytes}
            for e in dag.edges
        ],
    }


def dag_from_doc(doc: dict) -> WorkflowDag:
    try:
        tasks = tuple(
            TaskSpec(
                id=t["id"],
                label=t.get("label", t["id"]),
                length=float(t["length"]),
                binding=None
                if t.get("binding") is None
                else TaskBinding(t["binding"]["kind"], dict(t["binding"].get("params", {}))),
            )
            for t in doc["tasks"]
        )
        edges = tuple(
            DataEdge(e["parent"], e["child"], int(e["bytes"])) for e in doc["edges"]
        )
        return WorkflowDag(doc["name"], tasks, edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidWorkflowError(f"bad workflow document: {exc}") from exc
