"""
Native policy decision point.
"""

from xacml_analyzer.pdp.combining import (
    combine,
    deny_overrides,
    first_applicable,
    only_one_applicable,
    permit_overrides,
)
from xacml_analyzer.pdp.evaluator import (
    eval_allof,
    eval_anyof,
    eval_condition,
    eval_match,
    eval_policy,
    eval_policyset,
    eval_rule,
    eval_target,
    evaluate,
    trace,
)

__all__ = [
    # Combining algorithms
    "combine",
    "permit_overrides",
    "deny_overrides",
    "first_applicable",
    "only_one_applicable",
    # Evaluation
    "eval_match",
    "eval_allof",
    "eval_anyof",
    "eval_target",
    "eval_condition",
    "eval_rule",
    "eval_policy",
    "eval_policyset",
    "evaluate",
    "trace",
]
