"""
Policy analyses: completeness, conflicts, reachability and the
differential check between engines.
"""

from xacml_analyzer.analyzer.differential import (
    DifferentialResult,
    Divergence,
    differential_check,
)
from xacml_analyzer.analyzer.lp_pipeline import (
    LPPipeline,
    component_decisions,
    request_from_model,
)
from xacml_analyzer.analyzer.policy_analyzer import (
    PolicyAnalyzer,
    check_completeness,
    check_conflicts,
    check_reachability,
    shadowing_reason,
)
from xacml_analyzer.analyzer.request_space import RequestSpace

__all__ = [
    # Analyses
    "PolicyAnalyzer",
    "check_completeness",
    "check_conflicts",
    "check_reachability",
    "shadowing_reason",
    # Request space
    "RequestSpace",
    # Logic-program engine
    "LPPipeline",
    "component_decisions",
    "request_from_model",
    # Differential check
    "differential_check",
    "DifferentialResult",
    "Divergence",
]
