"""Computation offloading: pick the tier each task may execute in.

The energy-optimal strategy places each task independently at the tier with
the lowest end-device energy estimate. The estimate charges the device for
transmitting the task input, idling while the remote tier computes, and
receiving the result; local execution charges run power only. Queuing and
sibling contention are deliberately ignored here; the simulator measures the
real contention later.
"""

from __future__ import annotations

from dataclasses import dataclass

from edgeflow.environment import CLOUD, DEVICE, EDGE, Environment, TIERS, exec_time, transfer_time
from edgeflow.errors import EmptyTierError
from edgeflow.workflow import WorkflowDag

ENERGY_OPTIMAL = "energy-optimal"
ALL_IN_EDGE = "all-in-edge"
ALL_IN_CLOUD = "all-in-cloud"
STRATEGIES = (ENERGY_OPTIMAL, ALL_IN_EDGE, ALL_IN_CLOUD)
DEFAULT_STRATEGY = ENERGY_OPTIMAL


@dataclass(frozen=True)
class OffloadingPlan:
    tier_of: dict  # task id -> tier

    def to_doc(self) -> dict:
        return {"tier_of": dict(sorted(self.tier_of.items()))}


def _payloads(dag: WorkflowDag, task_id: str) -> tuple[int, int]:
    """(input bytes, output bytes) for estimation.

    Input is the in-edge total; entry tasks use their out-edge total as the
    upload payload proxy. Output is always the out-edge total.
    """
    in_edges = dag.in_edges(task_id)
    in_total = sum(e.bytes for e in in_edges)
    out_total = sum(e.bytes for e in dag.out_edges(task_id))
    return (out_total if not in_edges else in_total, out_total)


def device_energy_estimate(dag: WorkflowDag, env: Environment, task_id: str, tier: str) -> float:
    """End-device joules if this task ran at ``tier`` (mW * s / 1000).

    The fastest node of the tier stands in for the tier; transfers go between
    the origin device and that node.
    """
    task = dag.task(task_id)
    node = env.fastest_node(tier)
    if node is None:
        raise EmptyTierError(f"no {tier} nodes to estimate against")
    if tier == DEVICE:
        return env.node(env.origin_device).p_run * exec_time(task, node) / 1000.0
    origin = env.node(env.origin_device)
    input_bytes, output_bytes = _payloads(dag, task_id)
    up = transfer_time(input_bytes, origin, node, env.network)
    down = transfer_time(output_bytes, node, origin, env.network)
    return (
        origin.p_tx * up + origin.p_idle * exec_time(task, node) + origin.p_rx * down
    ) / 1000.0


def offload(dag: WorkflowDag, env: Environment, strategy: str = DEFAULT_STRATEGY) -> OffloadingPlan:
    """Map every task to a tier under the selected strategy.

    Energy-optimal tie-breaks toward Device < Edge < Cloud, preferring no
    network use on exact ties.
    """
    if strategy == ALL_IN_EDGE:
        return OffloadingPlan({t.id: EDGE for t in dag.tasks})
    if strategy == ALL_IN_CLOUD:
        return OffloadingPlan({t.id: CLOUD for t in dag.tasks})
    if strategy != ENERGY_OPTIMAL:
        raise ValueError(f"unknown offloading strategy {strategy!r}")

    tier_of = {}
    candidates = [tier for tier in TIERS if env.tier_nodes(tier)]
    for t in dag.tasks:
        best_tier = None
        best = None
        for tier in candidates:  # TIERS order implements the tie-break
            estimate = device_energy_estimate(dag, env, t.id, tier)
            if best is None or estimate < best:
                best = estimate
                best_tier = tier
        tier_of[t.id] = best_tier
    return OffloadingPlan(tier_of)
