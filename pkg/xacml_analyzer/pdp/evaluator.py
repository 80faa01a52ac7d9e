"""
Native policy decision point.

Evaluates stores directly against the three-valued semantics: targets
match or do not match, conditions are true or false and components
decide permit, deny or not applicable.
"""

import itertools
import logging
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

from xacml_analyzer.exception.exceptions import ConditionEvaluationException
from xacml_analyzer.models.condition import (
    AndExpr,
    ComparisonLeaf,
    ComparisonOperator,
    Condition,
    ConditionExpr,
    NotExpr,
    PredicateLeaf,
)
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory, CondValue, Decision, MatchValue
from xacml_analyzer.models.policy import (
    AllOf,
    AnyOf,
    Container,
    Match,
    Policy,
    PolicySet,
    Rule,
    Target,
)
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore
from xacml_analyzer.models.terms import Term, Value, Variable, value_sort_key
from xacml_analyzer.pdp.combining import combine

logger = logging.getLogger(__name__)

Tuples = Set[Tuple[Value, ...]]


def eval_match(match: Match, request: Request) -> MatchValue:
    """A match holds when the request carries its category value."""
    if request.has(match.category, match.value):
        return MatchValue.MATCH
    return MatchValue.NO_MATCH


def eval_allof(allof: AllOf, request: Request) -> MatchValue:
    """An AllOf holds when every match holds."""
    if all(eval_match(m, request) is MatchValue.MATCH for m in allof.matches):
        return MatchValue.MATCH
    return MatchValue.NO_MATCH


def eval_anyof(anyof: AnyOf, request: Request) -> MatchValue:
    """An AnyOf holds when some AllOf holds."""
    if any(eval_allof(a, request) is MatchValue.MATCH for a in anyof.allofs):
        return MatchValue.MATCH
    return MatchValue.NO_MATCH


def eval_target(target: Target, request: Request) -> MatchValue:
    """A target holds when every AnyOf holds; the null target always holds."""
    if all(eval_anyof(a, request) is MatchValue.MATCH for a in target.anyofs):
        return MatchValue.MATCH
    return MatchValue.NO_MATCH


def condition_universe(request: Request, domains: AttributeDomains) -> Tuple[Value, ...]:
    """
    Get the constants condition variables range over.

    These are the domain universe plus any value the request carries.
    """
    values = set(domains.universe())
    values.update(arg for fact in request.facts for arg in fact.args)
    return tuple(sorted(values, key=value_sort_key))


def eval_condition(condition: Condition, request: Request, domains: AttributeDomains) -> CondValue:
    """
    Evaluate a condition.

    The condition is true when some assignment of constants to its
    variables satisfies the expression.

    Args:
        condition: Condition to evaluate
        request: Request supplying category and external facts
        domains: Declared relations and the variable universe

    Returns:
        CondValue.TRUE or CondValue.FALSE

    Raises:
        ConditionEvaluationException: If a predicate is neither a category
            nor a declared relation
    """
    if condition.expr is None:
        return CondValue.TRUE
    tables = _predicate_tables(condition, request, domains)
    variables = condition.variables()
    universe = condition_universe(request, domains) if variables else ()
    for values in itertools.product(universe, repeat=len(variables)):
        binding = dict(zip(variables, values))
        if _holds(condition.expr, binding, tables):
            return CondValue.TRUE
    return CondValue.FALSE


def _predicate_tables(
    condition: Condition, request: Request, domains: AttributeDomains
) -> Dict[str, Tuples]:
    tables: Dict[str, Tuples] = {}
    for name in condition.predicate_names():
        if name in AttrCategory.names():
            tables[name] = request.tuples(name)
        elif domains.has_relation(name):
            tables[name] = set(domains.relation(name)) | request.tuples(name)
        else:
            raise ConditionEvaluationException(
                f"unknown predicate '{name}': not a category or a declared relation",
                context={"predicate": name},
            )
    return tables


def _resolve(term: Term, binding: Mapping[Variable, Value]) -> Value:
    return binding[term] if isinstance(term, Variable) else term


def _holds(
    expr: ConditionExpr, binding: Mapping[Variable, Value], tables: Mapping[str, Tuples]
) -> bool:
    if isinstance(expr, PredicateLeaf):
        return tuple(_resolve(arg, binding) for arg in expr.args) in tables[expr.name]
    if isinstance(expr, ComparisonLeaf):
        equal = _resolve(expr.left, binding) == _resolve(expr.right, binding)
        return equal if expr.op is ComparisonOperator.EQ else not equal
    if isinstance(expr, NotExpr):
        return not _holds(expr.operand, binding, tables)
    if isinstance(expr, AndExpr):
        return all(_holds(operand, binding, tables) for operand in expr.operands)
    return any(_holds(operand, binding, tables) for operand in expr.operands)


def eval_rule(rule: Rule, request: Request, domains: AttributeDomains) -> Decision:
    """A rule yields its effect when its target matches and its condition holds."""
    if eval_target(rule.target, request) is MatchValue.NO_MATCH:
        return Decision.NOT_APPLICABLE
    if eval_condition(rule.condition, request, domains) is CondValue.FALSE:
        return Decision.NOT_APPLICABLE
    return rule.effect.to_decision()


def _eval_container(
    container: Container, request: Request, domains: AttributeDomains, store: PolicyStore
) -> Decision:
    if eval_target(container.target, request) is MatchValue.NO_MATCH:
        return Decision.NOT_APPLICABLE
    decisions = [_eval_component(child, request, domains, store) for child in container.children]
    return combine(container.algorithm, decisions)


def _eval_component(
    component_id: str, request: Request, domains: AttributeDomains, store: PolicyStore
) -> Decision:
    component = store.get(component_id)
    if isinstance(component, Rule):
        return eval_rule(component, request, domains)
    return _eval_container(component, request, domains, store)


def eval_policy(
    policy: Policy, request: Request, domains: AttributeDomains, store: PolicyStore
) -> Decision:
    """
    Evaluate a policy over its rules.

    Not applicable when the target does not match; otherwise the rules'
    decisions combined with the policy's algorithm.
    """
    return _eval_container(policy, request, domains, store)


def eval_policyset(
    policy_set: PolicySet, request: Request, domains: AttributeDomains, store: PolicyStore
) -> Decision:
    """Evaluate a policy set over its policies and nested policy sets."""
    return _eval_container(policy_set, request, domains, store)


def evaluate(store: PolicyStore, request: Request, domains: AttributeDomains) -> Decision:
    """
    Evaluate the root of a store.

    Examples:
        >>> evaluate(store, Request.of({AttrCategory.SUBJECT: ["doctor"]}), domains)
        <Decision.PERMIT: 'p'>
    """
    return eval_policyset(store.root, request, domains, store)


def trace(
    store: PolicyStore,
    request: Request,
    domains: AttributeDomains,
    component_ids: Optional[Iterable[str]] = None,
) -> Dict[str, Decision]:
    """
    Evaluate every component of a store.

    Args:
        store: Store to evaluate
        request: Request to evaluate against
        domains: Declared relations and the variable universe
        component_ids: Restrict the result to these components

    Returns:
        Decision per component identifier, in pre-order
    """
    decisions: Dict[str, Decision] = {}
    for component in reversed(list(store)):
        if isinstance(component, Rule):
            decisions[component.id] = eval_rule(component, request, domains)
        elif eval_target(component.target, request) is MatchValue.NO_MATCH:
            decisions[component.id] = Decision.NOT_APPLICABLE
        else:
            children = [decisions[child] for child in component.children]
            decisions[component.id] = combine(component.algorithm, children)
    wanted = store.ids() if component_ids is None else list(component_ids)
    return {cid: decisions[cid] for cid in wanted}
