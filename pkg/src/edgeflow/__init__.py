"""edgeflow: an edge-computing workflow engine.

Builds task-offloading and scheduling plans for DAG workflows over a
Device/Edge/Cloud resource pool, evaluates them by deterministic simulation,
executes them for real on emulated node workers, and reports time, energy,
and cost.
"""

from edgeflow.accel import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
