"""Genetic algorithm over per-task allowed-node indices.

Chromosome = one gene per task. Elitism copies the best individuals; the rest
of each generation comes from binary tournaments, single-point crossover and
per-gene uniform resampling. Heuristic schedules seed the initial population.
"""

from __future__ import annotations

import random

from edgeflow.scheduling.fitness import FitnessEvaluator, heuristic_seeds
from edgeflow.scheduling.types import GaParams


def schedule_ga(ctx, objectives, params: GaParams | None = None, evaluator=None) -> dict[str, str]:
    if params is None:
        params = GaParams()
    if evaluator is None:
        evaluator = FitnessEvaluator(ctx, objectives)
    n = len(ctx.task_ids)
    if n == 0:
        return {}

    m = [len(a) for a in ctx.allowed]
    rng = random.Random(params.seed)

    population: list[tuple[int, ...]] = list(heuristic_seeds(ctx, objectives))[: params.population]
    while len(population) < params.population:
        population.append(tuple(rng.randrange(mi) for mi in m))
    fits = [evaluator(c) for c in population]

    best_chrom = population[0]
    best_fit = fits[0]
    for c, f in zip(population[1:], fits[1:]):
        if f < best_fit:
            best_fit = f
            best_chrom = c

    def tournament() -> tuple[int, ...]:
        i = rng.randrange(params.population)
        j = rng.randrange(params.population)
        return population[i] if fits[i] <= fits[j] else population[j]

    def mutate(chrom: tuple[int, ...]) -> tuple[int, ...]:
        genes = list(chrom)
        for k in range(n):
            if rng.random() < params.mutation_rate:
                genes[k] = rng.randrange(m[k])
        return tuple(genes)

    for _ in range(params.iterations):
        order = sorted(range(params.population), key=lambda i: fits[i])  # stable: index breaks ties
        next_pop = [population[i] for i in order[: params.elitism]]
        while len(next_pop) < params.population:
            p1 = tournament()
            p2 = tournament()
            if n >= 2 and rng.random() < params.crossover_rate:
                point = rng.randint(1, n - 1)
                c1 = p1[:point] + p2[point:]
                c2 = p2[:point] + p1[point:]
            else:
                c1, c2 = p1, p2
            next_pop.append(mutate(c1))
            if len(next_pop) < params.population:
                next_pop.append(mutate(c2))
        population = next_pop
        fits = [evaluator(c) for c in population]
        for c, f in zip(population, fits):
            if f < best_fit:
                best_fit = f
                best_chrom = c

    vec = evaluator.node_vector(best_chrom)
    return ctx.assignment_map(vec)
