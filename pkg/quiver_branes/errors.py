# quiver_branes/errors.py

from __future__ import annotations

from typing import Any, Dict, Optional


class QuiverBranesError(ValueError):
    """Base class: every domain failure carries a stable error_code."""

    error_code = "QUIVER_BRANES_ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "error_code": self.error_code,
            "message": self.message,
        }
        if self.details:
            payload["details"] = self.details
        return payload


class InvalidQuiverError(QuiverBranesError):
    error_code = "INVALID_QUIVER"


class ShapeMismatchError(QuiverBranesError):
    error_code = "SHAPE_MISMATCH"


class InvalidGroupElementError(QuiverBranesError):
    error_code = "INVALID_GROUP_ELEMENT"


class InvalidSpecError(QuiverBranesError):
    error_code = "INVALID_SPEC"


class InconsistentSignatureError(QuiverBranesError):
    error_code = "INCONSISTENT_SIGNATURE"


class NotStableError(QuiverBranesError):
    error_code = "NOT_STABLE"


class NotRegularError(QuiverBranesError):
    error_code = "NOT_REGULAR"


class LevelPreconditionError(QuiverBranesError):
    error_code = "LEVEL_PRECONDITION"


class AdhmViolationError(QuiverBranesError):
    error_code = "ADHM_VIOLATION"


class WrongQuiverError(QuiverBranesError):
    error_code = "WRONG_QUIVER"


class ZeroPointError(QuiverBranesError):
    error_code = "ZERO_POINT"


class PointNotOnLineError(QuiverBranesError):
    error_code = "POINT_NOT_ON_LINE"


class SpecMismatchError(QuiverBranesError):
    error_code = "SPEC_MISMATCH"


class NotExactFixedPointError(QuiverBranesError):
    error_code = "NOT_EXACT_FIXED_POINT"


class PayloadError(QuiverBranesError):
    error_code = "INVALID_PAYLOAD"


class PreconditionError(QuiverBranesError):
    error_code = "PRECONDITION"


class UsageError(QuiverBranesError):
    error_code = "USAGE"
