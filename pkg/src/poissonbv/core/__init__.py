"""Core error and report types."""

from poissonbv.core.errors import ErrorCode, ParseError, PoissonBVError
from poissonbv.core.report import CheckFailure, ValidationReport

__all__ = [
    "CheckFailure",
    "ErrorCode",
    "ParseError",
    "PoissonBVError",
    "ValidationReport",
]
