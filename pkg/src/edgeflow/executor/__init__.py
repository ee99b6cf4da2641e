from edgeflow.executor.builtins import (
    kmp_search,
    levenshtein,
    pi_estimate,
    run_builtin,
    selection_sort,
)
from edgeflow.executor.calibration import CalibrationConfig, calibrate
from edgeflow.executor.runner import (
    ABORTED,
    COMPLETED,
    FAILED,
    OUTCOME_FAILED,
    RUNNING,
    STANDBY,
    STATUSES,
    SUCCEEDED,
    RunEvent,
    RunRecord,
    execute_plan,
)

__all__ = [
    "run_builtin",
    "pi_estimate",
    "kmp_search",
    "levenshtein",
    "selection_sort",
    "CalibrationConfig",
    "calibrate",
    "RunEvent",
    "RunRecord",
    "execute_plan",
    "STANDBY",
    "RUNNING",
    "COMPLETED",
    "FAILED",
    "STATUSES",
    "SUCCEEDED",
    "OUTCOME_FAILED",
    "ABORTED",
]
