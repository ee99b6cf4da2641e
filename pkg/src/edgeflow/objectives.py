"""Optimization objectives: weighted time/energy/cost plus an optional deadline."""

from __future__ import annotations

from dataclasses import dataclass

from edgeflow.errors import InvalidObjectivesError


@dataclass(frozen=True)
class Objectives:
    w_time: float = 1.0
    w_energy: float = 0.0
    w_cost: float = 0.0
    deadline: float | None = None

    def __post_init__(self):
        weights = (self.w_time, self.w_energy, self.w_cost)
        if any(w < 0 for w in weights):
            raise InvalidObjectivesError("objective weights must be >= 0")
        if not any(w > 0 for w in weights):
            raise InvalidObjectivesError("at least one objective weight must be > 0")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise InvalidObjectivesError(
                f"objective weights must sum to 1, got {sum(weights)}"
            )
        if self.deadline is not None and not self.deadline > 0:
            raise InvalidObjectivesError("deadline must be > 0 seconds")

    @property
    def time_only(self) -> bool:
        return self.w_time == 1.0

    def to_doc(self) -> dict:
        return {
            "w_time": self.w_time,
            "w_energy": self.w_energy,
            "w_cost": self.w_cost,
            "deadline": self.deadline,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Objectives":
        return Objectives(
            w_time=float(doc.get("w_time", 0.0)),
            w_energy=float(doc.get("w_energy", 0.0)),
            w_cost=float(doc.get("w_cost", 0.0)),
            deadline=None if doc.get("deadline") is None else float(doc["deadline"]),
        )
