"""Workflow model: validation, topological order, binding."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_dag
from edgeflow.errors import CyclicWorkflowError, InvalidWorkflowError
from edgeflow.workflow import (
    PI_CALCULATION,
    SELECTION_SORT,
    TaskBinding,
    TaskSpec,
    WorkflowDag,
    bind_tasks,
    dag_from_doc,
    dag_to_doc,
    validate,
)


def test_validate_chain():
    dag = make_dag("chain", [("A", 1.0), ("B", 1.0), ("C", 1.0)],
                   [("A", "B", 0), ("B", "C", 0)])
    assert validate(dag) == ["A", "B", "C"]


def test_validate_breaks_ties_by_id():
    dag = make_dag("pair", [("B", 1.0), ("A", 1.0)])
    assert validate(dag) == ["A", "B"]


def test_validate_rejects_two_cycle():
    dag = make_dag("cycle", [("A", 1.0), ("B", 1.0)],
                   [("A", "B", 0), ("B", "A", 0)])
    with pytest.raises(CyclicWorkflowError):
        validate(dag)


def test_duplicate_task_ids_rejected():
    with pytest.raises(InvalidWorkflowError):
        make_dag("dup", [("A", 1.0), ("A", 2.0)])


def test_edge_to_unknown_task_rejected():
    with pytest.raises(InvalidWorkflowError):
        make_dag("bad", [("A", 1.0)], [("A", "Z", 0)])


def test_duplicate_edges_rejected():
    with pytest.raises(InvalidWorkflowError):
        make_dag("dup-edge", [("A", 1.0), ("B", 1.0)],
                 [("A", "B", 1), ("A", "B", 2)])


def test_self_edge_rejected():
    with pytest.raises(InvalidWorkflowError):
        make_dag("self", [("A", 1.0)], [("A", "A", 0)])


def test_nonpositive_length_rejected():
    with pytest.raises(InvalidWorkflowError):
        TaskSpec("A", "A", 0.0)


def test_bind_tasks_uniform_fill():
    dag = make_dag("u", [("A", 100.0), ("B", 200.0), ("C", 300.0)])
    bound = bind_tasks(dag, PI_CALCULATION)
    assert all(t.binding is not None and t.binding.kind == PI_CALCULATION
               for t in bound.tasks)
    assert all(t.binding.params["terms"] >= 1 for t in bound.tasks)


def test_bind_tasks_keeps_existing_bindings():
    existing = TaskBinding(SELECTION_SORT, {"n": 5, "seed": 1})
    dag = WorkflowDag(
        "mixed",
        (TaskSpec("A", "A", 100.0, binding=existing), TaskSpec("B", "B", 100.0)),
        (),
    )
    bound = bind_tasks(dag, PI_CALCULATION)
    assert bound.task("A").binding == existing
    assert bound.task("B").binding.kind == PI_CALCULATION


def test_bind_tasks_fully_bound_is_identity():
    dag = make_dag("f", [("A", 100.0)])
    once = bind_tasks(dag, PI_CALCULATION)
    twice = bind_tasks(once, SELECTION_SORT)
    assert twice == once


def test_doc_round_trip_preserves_everything():
    dag = bind_tasks(
        make_dag("rt", [("A", 123.5), ("B", 400.0)], [("A", "B", 42)]),
        PI_CALCULATION,
    )
    assert dag_from_doc(dag_to_doc(dag)) == dag


@st.composite
def random_dags(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    ids = [f"t{i}" for i in range(n)]
    tasks = [(tid, float(draw(st.integers(1, 5000)))) for tid in ids]
    edges = []
    for j in range(1, n):
        for i in range(j):
            if draw(st.booleans()):
                edges.append((ids[i], ids[j], draw(st.integers(0, 10**7))))
    return make_dag("h", tasks, edges)


@settings(max_examples=60, deadline=None)
@given(random_dags())
def test_topological_order_is_valid_permutation(dag):
    order = validate(dag)
    assert sorted(order) == sorted(t.id for t in dag.tasks)
    position = {tid: k for k, tid in enumerate(order)}
    for e in dag.edges:
        assert position[e.parent] < position[e.child]
