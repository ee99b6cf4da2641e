"""Particle swarm optimizer over per-task node choices.

Positions are real vectors with one dimension per task, clamped to
[0, m_i - eps) where m_i is the task's allowed-node count; decoding floors
each coordinate. Heuristic schedules seed part of the swarm, so the result is
never worse than the best seed.
"""

from __future__ import annotations

import numpy as np

from edgeflow.scheduling.fitness import FitnessEvaluator, heuristic_seeds
from edgeflow.scheduling.types import PsoParams

_POS_EPS = 1e-9


def velocity_position_step(x, v, pbest_x, gbest_x, r1, r2, params: PsoParams, v_max, x_max):
    """One particle update: returns (new position, new velocity)."""
    v_new = (
        params.inertia * v
        + params.c1 * r1 * (pbest_x - x)
        + params.c2 * r2 * (gbest_x - x)
    )
    np.clip(v_new, -v_max, v_max, out=v_new)
    x_new = x + v_new
    np.clip(x_new, 0.0, x_max, out=x_new)
    return x_new, v_new


def schedule_pso(ctx, objectives, params: PsoParams | None = None, evaluator=None) -> dict[str, str]:
    if params is None:
        params = PsoParams()
    if evaluator is None:
        evaluator = FitnessEvaluator(ctx, objectives)
    n = len(ctx.task_ids)
    if n == 0:
        return {}

    m = np.array([len(a) for a in ctx.allowed], dtype=np.float64)
    x_max = m - _POS_EPS
    v_max = m / 2.0
    rng = np.random.default_rng(params.seed)

    def decode(x: np.ndarray) -> tuple[int, ...]:
        idx = np.floor(x).astype(np.int64)
        np.clip(idx, 0, (m - 1).astype(np.int64), out=idx)
        return tuple(int(g) for g in idx)

    seeds = heuristic_seeds(ctx, objectives)
    positions = []
    for chrom in seeds[: params.particles]:
        positions.append(np.array(chrom, dtype=np.float64) + 0.5)
    while len(positions) < params.particles:
        positions.append(rng.random(n) * m)
    x = np.stack(positions)
    v = np.zeros_like(x)

    pbest_x = x.copy()
    pbest_fit = np.empty(params.particles)
    pbest_chrom: list[tuple[int, ...]] = [()] * params.particles
    for i in range(params.particles):
        chrom = decode(x[i])
        pbest_fit[i] = evaluator(chrom)
        pbest_chrom[i] = chrom

    gbest_i = 0
    for i in range(1, params.particles):
        if pbest_fit[i] < pbest_fit[gbest_i]:
            gbest_i = i
    gbest_fit = pbest_fit[gbest_i]
    gbest_x = pbest_x[gbest_i].copy()
    gbest_chrom = pbest_chrom[gbest_i]

    for _ in range(params.iterations):
        for i in range(params.particles):
            r1 = rng.random(n)
            r2 = rng.random(n)
            x[i], v[i] = velocity_position_step(
                x[i], v[i], pbest_x[i], gbest_x, r1, r2, params, v_max, x_max
            )
            chrom = decode(x[i])
            fit = evaluator(chrom)
            if fit < pbest_fit[i]:
                pbest_fit[i] = fit
                pbest_x[i] = x[i].copy()
                pbest_chrom[i] = chrom
        # synchronous, ordered reduction: ties keep the earlier particle
        for i in range(params.particles):
            if pbest_fit[i] < gbest_fit:
                gbest_fit = pbest_fit[i]
                gbest_x = pbest_x[i].copy()
                gbest_chrom = pbest_chrom[i]

    vec = evaluator.node_vector(gbest_chrom)
    return ctx.assignment_map(vec)
