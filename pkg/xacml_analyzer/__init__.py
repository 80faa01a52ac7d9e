"""
XACML Analyzer - evaluation and verification of XACML 3.0 policies
through answer set programming.

This package parses a textual XACML policy language, evaluates requests
directly, compiles policies into acyclic logic programs, solves them with
its own grounder and solver, and checks policies for gaps, conflicts and
unreachable rules.
"""

__version__ = "1.0.0"
__license__ = "MIT"

# Main API exports
from xacml_analyzer.analyzer.differential import DifferentialResult, differential_check
from xacml_analyzer.analyzer.policy_analyzer import (
    PolicyAnalyzer,
    check_completeness,
    check_conflicts,
    check_reachability,
)
from xacml_analyzer.config.analyzer_config import AnalyzerConfig
from xacml_analyzer.exception.exceptions import (
    BudgetExceededException,
    ErrorCode,
    PolicySyntaxException,
    PolicyValidationException,
    XacmlAnalyzerException,
)
from xacml_analyzer.lp.emitter import emit_analysis, transform_request, transform_store
from xacml_analyzer.models.analysis_report import AnalysisReport
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import (
    AnalysisTask,
    AttrCategory,
    CombiningAlgorithm,
    Decision,
    Effect,
    Engine,
    ReachabilityMode,
)
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore, build_store
from xacml_analyzer.parser.domains_parser import parse_domains
from xacml_analyzer.parser.policy_parser import parse_policy_file
from xacml_analyzer.parser.request_parser import parse_request
from xacml_analyzer.pdp.evaluator import evaluate, trace

__all__ = [
    # Parsing
    "parse_policy_file",
    "parse_domains",
    "parse_request",
    "build_store",
    # Models
    "PolicyStore",
    "AttributeDomains",
    "Request",
    "AnalysisReport",
    "AttrCategory",
    "Effect",
    "CombiningAlgorithm",
    "Decision",
    "Engine",
    "AnalysisTask",
    "ReachabilityMode",
    # Evaluation
    "evaluate",
    "trace",
    # Logic programs
    "transform_store",
    "transform_request",
    "emit_analysis",
    # Analyses
    "PolicyAnalyzer",
    "check_completeness",
    "check_conflicts",
    "check_reachability",
    "differential_check",
    "DifferentialResult",
    # Configuration
    "AnalyzerConfig",
    # Exceptions
    "XacmlAnalyzerException",
    "ErrorCode",
    "PolicySyntaxException",
    "PolicyValidationException",
    "BudgetExceededException",
    # Version
    "__version__",
]
