"""
Models module for the XACML analyzer.

This module provides the policy, request, domain and report models.
"""

from xacml_analyzer.models.analysis_report import REPORT_VERSION, AnalysisReport
from xacml_analyzer.models.condition import (
    TRUE_CONDITION,
    AndExpr,
    ComparisonLeaf,
    ComparisonOperator,
    Condition,
    ConditionExpr,
    NotExpr,
    OrExpr,
    PredicateLeaf,
)
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import (
    AnalysisTask,
    AttrCategory,
    CombiningAlgorithm,
    CondValue,
    Decision,
    Effect,
    Engine,
    MatchValue,
    OutputFormat,
    ProgramTask,
    ReachabilityMode,
    UnreachableReason,
    WitnessKind,
)
from xacml_analyzer.models.policy import (
    NULL_TARGET,
    AllOf,
    AnyOf,
    Component,
    ContainerBuilder,
    Match,
    ParsedComponent,
    Policy,
    PolicySet,
    Rule,
    RuleBuilder,
    Target,
)
from xacml_analyzer.models.request import Fact, Request
from xacml_analyzer.models.source_span import SourceSpan
from xacml_analyzer.models.store import PolicyStore, build_store
from xacml_analyzer.models.terms import Term, Value, Variable
from xacml_analyzer.models.witness import Witness

__all__ = [
    # Enums
    "AnalysisTask",
    "AttrCategory",
    "CombiningAlgorithm",
    "CondValue",
    "Decision",
    "Effect",
    "Engine",
    "MatchValue",
    "OutputFormat",
    "ProgramTask",
    "ReachabilityMode",
    "UnreachableReason",
    "WitnessKind",
    # Terms
    "Term",
    "Value",
    "Variable",
    # Conditions
    "Condition",
    "ConditionExpr",
    "PredicateLeaf",
    "ComparisonLeaf",
    "ComparisonOperator",
    "NotExpr",
    "AndExpr",
    "OrExpr",
    "TRUE_CONDITION",
    # Policy components
    "Match",
    "AllOf",
    "AnyOf",
    "Target",
    "NULL_TARGET",
    "Rule",
    "RuleBuilder",
    "Policy",
    "PolicySet",
    "ContainerBuilder",
    "Component",
    "ParsedComponent",
    "SourceSpan",
    # Store
    "PolicyStore",
    "build_store",
    # Requests and domains
    "Fact",
    "Request",
    "AttributeDomains",
    # Reports
    "Witness",
    "AnalysisReport",
    "REPORT_VERSION",
]
