"""Error taxonomy.

Every error carries a stable machine-readable ``code`` (kebab-case); the CLI
and the HTTP API surface that code verbatim, so it is part of the external
contract.
"""

from __future__ import annotations


class EdgeflowError(Exception):
    """Base class for all engine errors."""

    code = "internal-error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# --- workflow model ---------------------------------------------------------

class MalformedXmlError(EdgeflowError):
    code = "malformed-xml"


class UnknownJobReferenceError(EdgeflowError):
    code = "unknown-job-reference"


class CyclicWorkflowError(EdgeflowError):
    code = "cyclic-workflow"


class NegativeSizeError(EdgeflowError):
    code = "negative-size"


class InvalidWorkflowError(EdgeflowError):
    code = "invalid-workflow"


class InvalidWidthError(EdgeflowError):
    code = "invalid-width"


class InvalidCountError(EdgeflowError):
    code = "invalid-count"


# --- environment ------------------------------------------------------------

class InvalidEnvironmentError(EdgeflowError):
    code = "invalid-environment"


class MissingLinkError(EdgeflowError):
    code = "missing-link"


# --- scheduling / simulation ------------------------------------------------

class EmptyTierError(EdgeflowError):
    code = "empty-tier"


class IncompatibleObjectiveError(EdgeflowError):
    code = "incompatible-objective"


class InvalidObjectivesError(EdgeflowError):
    code = "invalid-objectives"


class SearchSpaceTooLargeError(EdgeflowError):
    code = "search-space-too-large"


class InconsistentAssignmentError(EdgeflowError):
    code = "inconsistent-assignment"


# --- real execution ---------------------------------------------------------

class UnboundTaskError(EdgeflowError):
    code = "unbound-task"


class TaskPanicError(EdgeflowError):
    code = "task-panic"


class WorkerPoolUnavailableError(EdgeflowError):
    code = "worker-pool-unavailable"


# --- control plane ----------------------------------------------------------

class InvalidDocumentError(EdgeflowError):
    code = "invalid-document"


class PlanNotFoundError(EdgeflowError):
    code = "plan-not-found"


class RunNotFoundError(EdgeflowError):
    code = "run-not-found"


class PlanNotSimulatedError(EdgeflowError):
    code = "plan-not-simulated"


class RunAlreadyActiveError(EdgeflowError):
    code = "run-already-active"


class RunNotTerminalError(EdgeflowError):
    code = "run-not-terminal"
