"""Scheduler names, hyperparameter records, and the objective gate."""

from __future__ import annotations

from dataclasses import dataclass

from edgeflow.errors import IncompatibleObjectiveError, InvalidObjectivesError
from edgeflow.objectives import Objectives

FCFS = "fcfs"
ROUND_ROBIN = "round-robin"
MIN_MIN = "min-min"
MAX_MIN = "max-min"
PSO = "pso"
GA = "ga"

HEURISTICS = (FCFS, ROUND_ROBIN, MIN_MIN, MAX_MIN)
METAHEURISTICS = (PSO, GA)
SCHEDULER_KINDS = HEURISTICS + METAHEURISTICS


def check_objective_gate(kind: str, objectives: Objectives) -> None:
    """The list heuristics are valid only for the pure time objective."""
    if kind not in SCHEDULER_KINDS:
        raise InvalidObjectivesError(f"unknown scheduler kind {kind!r}")
    if kind in HEURISTICS and not objectives.time_only:
        raise IncompatibleObjectiveError(
            f"{kind} only supports time optimization (w_time must be 1)"
        )


@dataclass(frozen=True)
class PsoParams:
    particles: int = 30
    c1: float = 2.0
    c2: float = 2.0
    inertia: float = 1.0
    iterations: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.particles < 1 or self.iterations < 1:
            raise InvalidObjectivesError("pso needs particles >= 1 and iterations >= 1")


@dataclass(frozen=True)
class GaParams:
    population: int = 50
    crossover_rate: float = 0.8
    mutation_rate: float = 0.1
    iterations: int = 100
    elitism: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.population < 2:
            raise InvalidObjectivesError("ga population must be >= 2")
        if not (0 <= self.crossover_rate <= 1 and 0 <= self.mutation_rate <= 1):
            raise InvalidObjectivesError("ga rates must be in [0, 1]")
        if self.iterations < 1:
            raise InvalidObjectivesError("ga iterations must be >= 1")
        if not (1 <= self.elitism < self.population):
            raise InvalidObjectivesError("ga elitism must satisfy 1 <= elitism < population")
