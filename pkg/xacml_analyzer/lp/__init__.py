"""
Logic-program representation, transformation of policy stores and the
ASP text format.
"""

from xacml_analyzer.lp.emitter import (
    LITERAL_DENY_OVERRIDES_RULES,
    ProgramEmitter,
    emit_analysis,
    emit_program,
    serialize_program,
    transform_combining,
    transform_request,
    transform_store,
)
from xacml_analyzer.lp.lp_parser import parse_program
from xacml_analyzer.lp.program import (
    Atom,
    ChoiceHead,
    Comparison,
    ComparisonOp,
    Literal,
    LogicProgram,
    LPRule,
)

__all__ = [
    # Program types
    "Atom",
    "Literal",
    "Comparison",
    "ComparisonOp",
    "ChoiceHead",
    "LPRule",
    "LogicProgram",
    # Transformation
    "ProgramEmitter",
    "transform_store",
    "transform_request",
    "transform_combining",
    "emit_analysis",
    "emit_program",
    "LITERAL_DENY_OVERRIDES_RULES",
    # Text format
    "serialize_program",
    "parse_program",
]
