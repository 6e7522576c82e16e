"""Error taxonomy shared by the library, the HTTP service and the CLI.

Every error carries a stable ``code`` used verbatim on the wire, so clients
can switch on it without parsing messages.
"""

from __future__ import annotations


class DecisionError(Exception):
    """Base class; ``code`` identifies the error kind, ``http_status`` maps it."""

    code = "decision-error"
    http_status = 400


class NonSquare(DecisionError):
    code = "non-square"


class NonPositiveEntry(DecisionError):
    code = "non-positive-entry"


class OutOfSaatyRange(DecisionError):
    code = "out-of-saaty-range"


class ReciprocityViolation(DecisionError):
    code = "reciprocity-violation"


class OrderOutOfRange(DecisionError):
    code = "order-out-of-range"


class ThresholdOrderViolation(DecisionError):
    code = "threshold-order-violation"


class MissingParams(DecisionError):
    code = "missing-params"


class MethodMismatch(DecisionError):
    code = "method-mismatch"


class UnknownAction(DecisionError):
    code = "unknown-action"


class IncompleteResponses(DecisionError):
    code = "incomplete-responses"


class NoParticipants(DecisionError):
    code = "no-participants"


class PhaseExhausted(DecisionError):
    code = "phase-exhausted"


class ValidationFailed(DecisionError):
    code = "validation-failed"


class ParamDimensionMismatch(DecisionError):
    code = "param-dimension-mismatch"


class SessionNotFound(DecisionError):
    code = "session-not-found"
    http_status = 404


class WrongPhase(DecisionError):
    code = "wrong-phase"
    http_status = 409


class UnknownShape(DecisionError):
    code = "unknown-shape"


class MalformedLine(DecisionError):
    code = "malformed-line"

    def __init__(self, line_no: int, message: str = ""):
        self.line_no = line_no
        super().__init__(message or f"line {line_no} is missing or malformed")


class TokenCountMismatch(DecisionError):
    code = "token-count-mismatch"
