from edgeflow.sim.context import SimContext
from edgeflow.sim.engine import (
    FEASIBLE,
    INFEASIBLE,
    NO_DEADLINE,
    DeviceTimes,
    GanttEntry,
    Metrics,
    Schedule,
    assignment_breakdown,
    check_deadline,
    simulate,
)

__all__ = [
    "SimContext",
    "FEASIBLE",
    "INFEASIBLE",
    "NO_DEADLINE",
    "DeviceTimes",
    "GanttEntry",
    "Metrics",
    "Schedule",
    "assignment_breakdown",
    "check_deadline",
    "simulate",
]
