"""Weighted multi-objective fitness, normalized by the FCFS baseline."""

from __future__ import annotations

from edgeflow.objectives import Objectives
from edgeflow.sim.context import SimContext
from edgeflow.sim.engine import Metrics


def baseline_metrics(ctx: SimContext) -> Metrics:
    """Metrics of the FCFS schedule under the same offloading plan."""
    from edgeflow.scheduling.heuristics import schedule_fcfs

    assignment = schedule_fcfs(ctx)
    vec = [ctx.node_index[assignment[tid]] for tid in ctx.task_ids]
    makespan, energy, cost = ctx.evaluate(vec)
    return Metrics(makespan, energy, cost)


class FitnessEvaluator:
    """Caches fitness per chromosome (allowed-node index per task).

    fitness = w_t * T/T0 + w_e * E/E0 + w_c * C/C0, lower is better; zero
    baseline components fall back to 1 so the ratio stays defined.
    """

    def __init__(self, ctx: SimContext, objectives: Objectives, baseline: Metrics | None = None):
        if ctx.allowed is None:
            raise ValueError("fitness evaluation needs an offloading plan context")
        self.ctx = ctx
        self.objectives = objectives
        if baseline is None:
            baseline = baseline_metrics(ctx)
        self.baseline = baseline
        self._t0 = baseline.makespan if baseline.makespan > 0 else 1.0
        self._e0 = baseline.energy if baseline.energy > 0 else 1.0
        self._c0 = baseline.cost if baseline.cost > 0 else 1.0
        self._cache: dict[tuple, float] = {}
        self.evaluations = 0

    def node_vector(self, chromosome) -> list[int]:
        allowed = self.ctx.allowed
        return [allowed[i][g] for i, g in enumerate(chromosome)]

    def chromosome_of(self, assignment: dict[str, str]) -> tuple[int, ...]:
        """Allowed-index chromosome for an id -> id assignment map."""
        ctx = self.ctx
        vec = ctx.assignment_vector(assignment)
        return tuple(ctx.allowed[i].index(node) for i, node in enumerate(vec))

    def metrics(self, chromosome) -> Metrics:
        makespan, energy, cost = self.ctx.evaluate(self.node_vector(chromosome))
        return Metrics(makespan, energy, cost)

    def __call__(self, chromosome) -> float:
        key = tuple(chromosome)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        makespan, energy, cost = self.ctx.evaluate(self.node_vector(key))
        obj = self.objectives
        value = (
            obj.w_time * (makespan / self._t0)
            + obj.w_energy * (energy / self._e0)
            + obj.w_cost * (cost / self._c0)
        )
        self._cache[key] = value
        self.evaluations += 1
        return value


def heuristic_seeds(ctx: SimContext, objectives: Objectives) -> list[tuple[int, ...]]:
    """Chromosomes of the heuristic schedules used to seed PSO/GA.

    All four when the objective is pure time (their validity domain),
    otherwise FCFS alone.
    """
    from edgeflow.scheduling.heuristics import (
        schedule_fcfs,
        schedule_max_min,
        schedule_min_min,
        schedule_round_robin,
    )

    if objectives.time_only:
        builders = (schedule_fcfs, schedule_round_robin, schedule_min_min, schedule_max_min)
    else:
        builders = (schedule_fcfs,)
    seeds = []
    for build in builders:
        assignment = build(ctx)
        vec = ctx.assignment_vector(assignment)
        seeds.append(tuple(ctx.allowed[i].index(n) for i, n in enumerate(vec)))
    return seeds
