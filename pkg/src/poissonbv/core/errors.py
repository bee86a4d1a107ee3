"""Error classification system for poisson-bv-calc.

Provides structured error types for consistent CLI reports and error handling.

This module defines:
- ErrorCode: Enumeration of machine-readable error codes
- PoissonBVError: Base exception class rendered by the command-line driver
- Specific error classes for input, degree and consistency failures
"""

from __future__ import annotations

from enum import Enum
from typing import Any

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class ErrorCode(str, Enum):
    """Error codes for reports.

    These codes provide machine-readable error classification
    so scripted callers can react to failures programmatically.
    """

    PARSE_ERROR = "PARSE_ERROR"
    PRESENTATION_MISMATCH = "PRESENTATION_MISMATCH"
    INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"
    NON_CONFLUENT_RULES = "NON_CONFLUENT_RULES"
    DEGREE_OUT_OF_RANGE = "DEGREE_OUT_OF_RANGE"
    DEGREE_MISMATCH = "DEGREE_MISMATCH"
    ARITY_MISMATCH = "ARITY_MISMATCH"
    NOT_POISSON_DERIVATION = "NOT_POISSON_DERIVATION"
    DIVISION_INCONSISTENT = "DIVISION_INCONSISTENT"
    NOT_CLOSED = "NOT_CLOSED"
    NOT_GRADED = "NOT_GRADED"
    NOT_FREE_PRESENTATION = "NOT_FREE_PRESENTATION"
    INTERNAL_ERROR = "INTERNAL_ERROR"


class PoissonBVError(Exception):
    """Base exception for poisson-bv-calc errors.

    All library exceptions inherit from this class.
    The command-line driver prints ``describe()`` and exits with ``exit_status``.

    Attributes:
        code: The error code for this exception type
        exit_status: Process exit status the CLI returns
        message: Human-readable error message
        details: Additional error details

    Example:
        raise PoissonBVError("Something went wrong", details={"degree": 3})
    """

    code: ErrorCode = ErrorCode.INTERNAL_ERROR
    exit_status: int = EXIT_CHECK_FAILED

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        """Initialize the error.

        Args:
            message: Human-readable error message
            details: Additional error details (optional)
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def describe(self) -> str:
        """The text the command-line driver prints on stderr.

        Returns:
            ``error[CODE]: message``, plus location lines for subclasses that carry one
        """
        return f"error[{self.code.value}]: {self.message}"


class ParseError(PoissonBVError):
    """Malformed expression or input document.

    Raised when text does not follow the expression grammar or the
    sectioned file format. Carries a 1-based line and column.
    """

    code = ErrorCode.PARSE_ERROR
    exit_status = EXIT_USAGE

    def __init__(
        self,
        message: str,
        line: int = 1,
        column: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        """Initialize the error.

        Args:
            message: Human-readable error message
            line: 1-based line of the offending text
            column: 1-based column of the offending text
            details: Additional error details (optional)
        """
        super().__init__(message, details={**(details or {}), "line": line, "column": column})
        self.line = line
        self.column = column

    def describe(self) -> str:
        """The error line followed by its location."""
        return f"{super().describe()}\n  line {self.line}, column {self.column}"

    def at(self, line: int, column_offset: int) -> ParseError:
        """Relocate an expression-local error into document coordinates."""
        return ParseError(
            self.message,
            line=line,
            column=self.column + column_offset,
            details={k: v for k, v in self.details.items() if k not in ("line", "column")},
        )


class PresentationMismatchError(PoissonBVError):
    """Operands belong to different presentations."""

    code = ErrorCode.PRESENTATION_MISMATCH
    exit_status = EXIT_USAGE


class IndexOutOfRangeError(PoissonBVError):
    """Generator index outside the declared generators."""

    code = ErrorCode.INDEX_OUT_OF_RANGE
    exit_status = EXIT_USAGE


class NonConfluentRulesError(PoissonBVError):
    """Rewrite rules cannot be trusted to give unique normal forms.

    Raised when two leading monomials overlap without an explicit
    confluence assertion, or when a rule does not terminate.
    """

    code = ErrorCode.NON_CONFLUENT_RULES
    exit_status = EXIT_USAGE


class DegreeOutOfRangeError(PoissonBVError):
    """Form or multivector degree outside the admissible range."""

    code = ErrorCode.DEGREE_OUT_OF_RANGE
    exit_status = EXIT_USAGE


class DegreeMismatchError(PoissonBVError):
    """Operands have incompatible degrees."""

    code = ErrorCode.DEGREE_MISMATCH
    exit_status = EXIT_USAGE


class ArityMismatchError(PoissonBVError):
    """A multivector was evaluated on the wrong number of arguments."""

    code = ErrorCode.ARITY_MISMATCH
    exit_status = EXIT_USAGE


class NotPoissonDerivationError(PoissonBVError):
    """A twisting derivation fails [pi, phi] = 0."""

    code = ErrorCode.NOT_POISSON_DERIVATION
    exit_status = EXIT_USAGE


class DivisionInconsistentError(PoissonBVError):
    """Division by the volume form left a nonzero remainder.

    Signals corrupt volume data.
    """

    code = ErrorCode.DIVISION_INCONSISTENT
    exit_status = EXIT_CHECK_FAILED


class NotClosedError(PoissonBVError):
    """A twisting 1-form is not de Rham closed."""

    code = ErrorCode.NOT_CLOSED
    exit_status = EXIT_USAGE


class NotGradedError(PoissonBVError):
    """Bracket or twist coefficients are not homogeneous of a common degree."""

    code = ErrorCode.NOT_GRADED
    exit_status = EXIT_USAGE


class NotFreePresentationError(PoissonBVError):
    """The operation needs a free polynomial presentation."""

    code = ErrorCode.NOT_FREE_PRESENTATION
    exit_status = EXIT_USAGE
