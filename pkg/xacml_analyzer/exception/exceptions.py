"""
Exception classes for XACML analyzer errors.

This module defines all custom exceptions used throughout the analyzer,
including a base exception class, error codes, and specific exception types.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, TYPE_CHECKING

if TYPE_CHECKING:
    from xacml_analyzer.models.source_span import SourceSpan


class ErrorCode(Enum):
    """Error codes for the different kinds of analyzer failures."""

    POLICY_SYNTAX = "policy_syntax"
    """Policy, domain, request or program text could not be parsed"""

    POLICY_INVALID = "policy_invalid"
    """Parsed components violate a store invariant"""

    DOMAIN_INVALID = "domain_invalid"
    """Attribute-domain file is malformed or inconsistent"""

    REQUEST_INVALID = "request_invalid"
    """Request file is malformed or names an unknown category"""

    CONDITION_EVALUATION = "condition_evaluation"
    """A condition refers to a predicate that is neither a category nor a relation"""

    PROGRAM_UNSAFE = "program_unsafe"
    """A logic-program rule is not range-restricted"""

    GROUNDING_FAILED = "grounding_failed"
    """Grounding could not instantiate a rule"""

    SOLVER_PRECONDITION = "solver_precondition"
    """Solver called on a program outside its supported class"""

    BUDGET_EXCEEDED = "budget_exceeded"
    """The request space is larger than the configured budget"""

    EMPTY_DOMAIN = "empty_domain"
    """A referenced attribute category has no values to generate"""

    ENGINE_MISMATCH = "engine_mismatch"
    """Native and logic-program engines produced different results"""

    CONFIGURATION_INVALID = "configuration_invalid"
    """Configuration validation failed"""


class XacmlAnalyzerException(Exception):
    """
    Base exception for analyzer errors.

    This exception includes an error code and optional context information
    to provide detailed error diagnostics.

    Attributes:
        error_code: The ErrorCode indicating the type of error
        context: Additional context information about the error
    """

    def __init__(
        self,
        error_code: ErrorCode,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        """
        Initialize an XacmlAnalyzerException.

        Args:
            error_code: The ErrorCode indicating the type of error
            message: Human-readable error message
            cause: The underlying exception that caused this error, if any
            context: Additional context information about the error
        """
        super().__init__(message)
        self.error_code = error_code
        self.context = dict(context) if context else {}
        self.__cause__ = cause

    @property
    def message(self) -> str:
        """Return the human-readable message."""
        return str(self.args[0])

    def __str__(self) -> str:
        """Return a string representation of the exception."""
        return (
            f"{type(self).__name__}(error_code={self.error_code.value}, "
            f"message='{self.message}', context={self.context})"
        )

    def __repr__(self) -> str:
        """Return a detailed string representation of the exception."""
        return self.__str__()


class PolicySyntaxException(XacmlAnalyzerException):
    """
    Exception raised when a policy, domain or request text cannot be parsed.

    Attributes:
        span: Location of the offending input
        expected: Sorted names of the tokens that would have been accepted
    """

    def __init__(
        self,
        message: str,
        span: Optional["SourceSpan"] = None,
        expected: Optional[List[str]] = None,
        cause: Optional[Exception] = None,
    ) -> None:
        """
        Initialize a PolicySyntaxException.

        Args:
            message: Human-readable error message
            span: Location of the offending input
            expected: Names of the tokens that would have been accepted
            cause: The underlying parser exception, if any
        """
        self.span = span
        self.expected = sorted(expected) if expected else []
        context: Dict[str, Any] = {}
        if span is not None:
            context["span"] = str(span)
        if self.expected:
            context["expected"] = self.expected
        super().__init__(ErrorCode.POLICY_SYNTAX, message, cause, context)


class PolicyValidationException(XacmlAnalyzerException):
    """
    Exception raised when parsed components violate a store invariant.

    Raised for duplicate identifiers, dangling references, reference cycles,
    a missing or ambiguous root, empty child lists, match values outside the
    declared domains and conditions that are not range-restricted.
    """

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.POLICY_INVALID, message, cause, context)


class DomainFileException(XacmlAnalyzerException):
    """Exception raised when an attribute-domain file is inconsistent."""

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.DOMAIN_INVALID, message, cause, context)


class RequestFileException(XacmlAnalyzerException):
    """Exception raised when a request names an unknown category or is malformed."""

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.REQUEST_INVALID, message, cause, context)


class ConditionEvaluationException(XacmlAnalyzerException):
    """Exception raised when a condition refers to an unknown predicate."""

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.CONDITION_EVALUATION, message, cause, context)


class ProgramSafetyException(XacmlAnalyzerException):
    """
    Exception raised when a logic-program rule is not range-restricted.

    Every variable of a rule head, of a negative literal or of a comparison
    must occur in a positive body literal.
    """

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.PROGRAM_UNSAFE, message, cause, context)


class GroundingException(XacmlAnalyzerException):
    """Exception raised when grounding cannot instantiate a rule."""

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.GROUNDING_FAILED, message, cause, context)


class SolverPreconditionException(XacmlAnalyzerException):
    """
    Exception raised when the solver receives a program it does not support.

    The solver handles acyclic normal programs, optionally extended with
    cardinality choice rules and constraints for model enumeration.
    """

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.SOLVER_PRECONDITION, message, cause, context)


class BudgetExceededException(XacmlAnalyzerException):
    """
    Exception raised when the request space exceeds the configured budget.

    Attributes:
        space_size: Number of requests the analysis would have to enumerate
        budget: The configured maximum
    """

    def __init__(self, space_size: int, budget: int) -> None:
        """
        Initialize a BudgetExceededException.

        Args:
            space_size: Number of requests the analysis would have to enumerate
            budget: The configured maximum
        """
        super().__init__(
            ErrorCode.BUDGET_EXCEEDED,
            f"request space of {space_size} requests exceeds the budget of {budget}; "
            f"shrink the attribute domains or raise the budget",
            context={"space_size": space_size, "budget": budget},
        )
        self.space_size = space_size
        self.budget = budget


class EmptyDomainException(XacmlAnalyzerException):
    """Exception raised when a referenced category has an empty domain."""

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.EMPTY_DOMAIN, message, cause, context)


class EngineMismatchException(XacmlAnalyzerException):
    """Exception raised when the native and logic-program engines disagree."""

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.ENGINE_MISMATCH, message, cause, context)


class ConfigurationException(XacmlAnalyzerException):
    """
    Exception raised when configuration validation fails.

    This exception is thrown when required configuration is missing or invalid.
    """

    def __init__(
        self,
        message: str,
        cause: Optional[Exception] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(ErrorCode.CONFIGURATION_INVALID, message, cause, context)
