"""Scheduler dispatch: one entry point over the six algorithms."""

from __future__ import annotations

from edgeflow.environment import Environment
from edgeflow.errors import EmptyTierError
from edgeflow.objectives import Objectives
from edgeflow.offloading import OffloadingPlan
from edgeflow.scheduling.brute import brute_force_optimal
from edgeflow.scheduling.fitness import FitnessEvaluator, baseline_metrics, heuristic_seeds
from edgeflow.scheduling.ga import schedule_ga
from edgeflow.scheduling.heuristics import (
    schedule_fcfs,
    schedule_max_min,
    schedule_min_min,
    schedule_round_robin,
)
from edgeflow.scheduling.pso import schedule_pso
from edgeflow.scheduling.types import (
    FCFS,
    GA,
    HEURISTICS,
    MAX_MIN,
    METAHEURISTICS,
    MIN_MIN,
    PSO,
    ROUND_ROBIN,
    SCHEDULER_KINDS,
    GaParams,
    PsoParams,
    check_objective_gate,
)
from edgeflow.sim.context import SimContext
from edgeflow.workflow import WorkflowDag


def allowed_nodes(task_id: str, plan: OffloadingPlan, env: Environment) -> list[str]:
    """Node ids of the task's offloaded tier, ascending; errors when empty."""
    tier = plan.tier_of[task_id]
    nodes = [n.id for n in env.tier_nodes(tier)]
    if not nodes:
        raise EmptyTierError(f"task {task_id!r} offloaded to {tier} but the tier has no nodes")
    return nodes


def schedule(
    dag: WorkflowDag,
    env: Environment,
    plan: OffloadingPlan,
    kind: str,
    objectives: Objectives | None = None,
    params=None,
    seed: int = 0,
    ctx: SimContext | None = None,
) -> dict[str, str]:
    """Run one scheduler; heuristics are gated to the pure time objective."""
    if objectives is None:
        objectives = Objectives()
    check_objective_gate(kind, objectives)
    if ctx is None:
        ctx = SimContext(dag, env, plan)
    if kind == FCFS:
        return schedule_fcfs(ctx)
    if kind == ROUND_ROBIN:
        return schedule_round_robin(ctx)
    if kind == MIN_MIN:
        return schedule_min_min(ctx)
    if kind == MAX_MIN:
        return schedule_max_min(ctx)
    if kind == PSO:
        if params is None:
            params = PsoParams(seed=seed)
        return schedule_pso(ctx, objectives, params)
    if kind == GA:
        if params is None:
            params = GaParams(seed=seed)
        return schedule_ga(ctx, objectives, params)
    raise AssertionError(f"unreachable scheduler kind {kind!r}")


__all__ = [
    "FCFS",
    "ROUND_ROBIN",
    "MIN_MIN",
    "MAX_MIN",
    "PSO",
    "GA",
    "HEURISTICS",
    "METAHEURISTICS",
    "SCHEDULER_KINDS",
    "PsoParams",
    "GaParams",
    "check_objective_gate",
    "allowed_nodes",
    "schedule",
    "schedule_fcfs",
    "schedule_round_robin",
    "schedule_min_min",
    "schedule_max_min",
    "schedule_pso",
    "schedule_ga",
    "brute_force_optimal",
    "FitnessEvaluator",
    "baseline_metrics",
    "heuristic_seeds",
]
