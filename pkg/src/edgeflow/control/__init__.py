from edgeflow.control.plans import ExecutionPlan, plan_from_request
from edgeflow.control.service import EngineService
from edgeflow.control.store import RunStore

__all__ = ["ExecutionPlan", "plan_from_request", "EngineService", "RunStore"]
