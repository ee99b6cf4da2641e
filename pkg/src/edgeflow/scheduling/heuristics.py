"""List-scheduling heuristics: FCFS, round-robin, min-min, max-min.

All four traverse or drain tasks deterministically (id ties always break
ascending) and return plain ``task id -> node id`` assignment maps. Their
internal completion-time bookkeeping uses exactly the list model the
simulator applies later.
"""

from __future__ import annotations

from edgeflow.sim.context import SimContext


class _ListState:
    """Incremental list-model state shared by the heuristics."""

    def __init__(self, ctx: SimContext):
        self.ctx = ctx
        self.avail = [0.0] * len(ctx.node_ids)
        self.finish = [0.0] * len(ctx.task_ids)
        self.node_of = [-1] * len(ctx.task_ids)

    def start_finish(self, task: int, node: int) -> tuple[float, float]:
        ctx = self.ctx
        data_ready = 0.0
        if ctx.is_entry[task]:
            if node != ctx.origin:
                data_ready = ctx.transfer_seconds(ctx.origin, node, ctx.out_total[task])
        else:
            for parent, bytes_ in ctx.in_edges[task]:
                arrival = self.finish[parent] + ctx.transfer_seconds(
                    self.node_of[parent], node, bytes_
                )
                if arrival > data_ready:
                    data_ready = arrival
        start = self.avail[node] if self.avail[node] > data_ready else data_ready
        return start, start + ctx.exec_seconds(task, node)

    def commit(self, task: int, node: int) -> None:
        _, finish = self.start_finish(task, node)
        self.finish[task] = finish
        self.node_of[task] = node
        self.avail[node] = finish


def schedule_fcfs(ctx: SimContext) -> dict[str, str]:
    """Topological order; each task goes to the allowed node where it could
    start earliest, counting node availability and parent-data arrival (ties
    to the lowest node id)."""
    state = _ListState(ctx)
    for task in ctx.topo_order:
        best = None
        best_start = None
        for node in ctx.allowed[task]:  # ascending node id: first win keeps low id
            start, _ = state.start_finish(task, node)
            if best_start is None or start < best_start:
                best_start = start
                best = node
        state.commit(task, best)
    return ctx.assignment_map(state.node_of)


def schedule_round_robin(ctx: SimContext) -> dict[str, str]:
    """Topological order; the k-th task of a tier takes allowed node
    k mod tier size, with an independent counter per tier."""
    counters: dict[str, int] = {}
    node_of = [-1] * len(ctx.task_ids)
    for task in ctx.topo_order:
        tier = ctx.plan.tier_of[ctx.task_ids[task]]
        k = counters.get(tier, 0)
        nodes = ctx.allowed[task]
        node_of[task] = nodes[k % len(nodes)]
        counters[tier] = k + 1
    return ctx.assignment_map(node_of)


def _drain(ctx: SimContext, pick_max: bool) -> dict[str, str]:
    state = _ListState(ctx)
    n = len(ctx.task_ids)
    remaining_parents = [len(ctx.in_edges[i]) for i in range(n)]
    ready = sorted(
        (i for i in range(n) if remaining_parents[i] == 0),
        key=lambda i: ctx.task_ids[i],
    )
    children: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for parent, _ in ctx.in_edges[i]:
            children[parent].append(i)

    scheduled = 0
    while scheduled < n:
        chosen_task = None
        chosen_node = None
        chosen_ect = None
        for task in ready:
            # best node for this task: lowest ECT, ties to the lower node id
            task_node = None
            task_ect = None
            for node in ctx.allowed[task]:
                _, ect = state.start_finish(task, node)
                if task_ect is None or ect < task_ect:
                    task_ect = ect
                    task_node = node
            better = (
                chosen_ect is None
                or (task_ect > chosen_ect if pick_max else task_ect < chosen_ect)
            )
            if better:
                chosen_task, chosen_node, chosen_ect = task, task_node, task_ect
        state.commit(chosen_task, chosen_node)
        scheduled += 1
        ready.remove(chosen_task)
        for child in children[chosen_task]:
            remaining_parents[child] -= 1
            if remaining_parents[child] == 0:
                ready.append(child)
        ready.sort(key=lambda i: ctx.task_ids[i])
    return ctx.assignment_map(state.node_of)


def schedule_min_min(ctx: SimContext) -> dict[str, str]:
    """Repeatedly commit the ready (task, node) pair with the globally
    smallest estimated completion time."""
    return _drain(ctx, pick_max=False)


def schedule_max_min(ctx: SimContext) -> dict[str, str]:
    """As min-min, but the ready task whose best completion time is largest
    goes first."""
    return _drain(ctx, pick_max=True)
