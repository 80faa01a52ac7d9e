"""
Analyzer exception module.

This module provides all exception classes used throughout the analyzer.
"""

from xacml_analyzer.exception.exceptions import (
    BudgetExceededException,
    ConditionEvaluationException,
    ConfigurationException,
    DomainFileException,
    EmptyDomainException,
    EngineMismatchException,
    ErrorCode,
    GroundingException,
    PolicySyntaxException,
    PolicyValidationException,
    ProgramSafetyException,
    RequestFileException,
    SolverPreconditionException,
    XacmlAnalyzerException,
)

__all__ = [
    "ErrorCode",
    "XacmlAnalyzerException",
    "PolicySyntaxException",
    "PolicyValidationException",
    "DomainFileException",
    "RequestFileException",
    "ConditionEvaluationException",
    "ProgramSafetyException",
    "GroundingException",
    "SolverPreconditionException",
    "BudgetExceededException",
    "EmptyDomainException",
    "EngineMismatchException",
    "ConfigurationException",
]
