"""Exhaustive tier-respecting search; the testing oracle for the schedulers."""

from __future__ import annotations

import itertools

from edgeflow.errors import SearchSpaceTooLargeError
from edgeflow.scheduling.fitness import FitnessEvaluator
from edgeflow.sim.engine import Metrics

SEARCH_SPACE_LIMIT = 100_000


def brute_force_optimal(ctx, objectives, evaluator=None) -> tuple[dict[str, str], Metrics]:
    """Enumerate every assignment, minimize fitness; ties go to the
    lexicographically smallest allowed-index vector."""
    if evaluator is None:
        evaluator = FitnessEvaluator(ctx, objectives)
    sizes = [len(a) for a in ctx.allowed]
    space = 1
    for mi in sizes:
        space *= mi
        if space > SEARCH_SPACE_LIMIT:
            raise SearchSpaceTooLargeError(
                f"assignment space exceeds {SEARCH_SPACE_LIMIT}"
            )

    best_chrom = None
    best_fit = None
    for chrom in itertools.product(*(range(mi) for mi in sizes)):
        fit = evaluator(chrom)
        if best_fit is None or fit < best_fit:
            best_fit = fit
            best_chrom = chrom
    metrics = evaluator.metrics(best_chrom)
    return ctx.assignment_map(evaluator.node_vector(best_chrom)), metrics
