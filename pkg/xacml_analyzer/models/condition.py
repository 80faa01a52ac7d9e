"""
Condition model.

A condition is either the constant true or a boolean expression over
predicate leaves, equality comparisons, negation, conjunction and
disjunction. Leaves may use variables, which are read existentially:
the condition holds if some assignment of domain constants to its
variables satisfies the expression.
"""

from enum import Enum
from typing import Annotated, Iterator, List, Literal, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from xacml_analyzer.models.terms import Term, Value, Variable, format_term


class ComparisonOperator(Enum):
    """Comparison operators allowed in conditions."""

    EQ = "=="
    NEQ = "!="


class PredicateLeaf(BaseModel):
    """
    A predicate applied to terms, such as patient_id(X).

    The predicate name is either an attribute category, which reads the
    request's facts, or a relation declared in the attribute domains,
    which also reads the request's external facts.
    """

    kind: Literal["predicate"] = "predicate"
    name: str
    args: Tuple[Term, ...] = Field(min_length=1)

    model_config = ConfigDict(frozen=True)


class ComparisonLeaf(BaseModel):
    """An equality or disequality between two terms."""

    kind: Literal["comparison"] = "comparison"
    op: ComparisonOperator
    left: Term
    right: Term

    model_config = ConfigDict(frozen=True)


class NotExpr(BaseModel):
    """Negation of a sub-expression."""

    kind: Literal["not"] = "not"
    operand: "ConditionExpr"

    model_config = ConfigDict(frozen=True)


class AndExpr(BaseModel):
    """Conjunction of two or more sub-expressions."""

    kind: Literal["and"] = "and"
    operands: Tuple["ConditionExpr", ...] = Field(min_length=2)

    model_config = ConfigDict(frozen=True)


class OrExpr(BaseModel):
    """Disjunction of two or more sub-expressions."""

    kind: Literal["or"] = "or"
    operands: Tuple["ConditionExpr", ...] = Field(min_length=2)

    model_config = ConfigDict(frozen=True)


ConditionExpr = Annotated[
    Union[PredicateLeaf, ComparisonLeaf, NotExpr, AndExpr, OrExpr],
    Field(discriminator="kind"),
]

NotExpr.model_rebuild()
AndExpr.model_rebuild()
OrExpr.model_rebuild()


class Condition(BaseModel):
    """
    A rule condition.

    Attributes:
        expr: Boolean expression, or None for the constant true
    """

    expr: Optional[ConditionExpr] = None

    model_config = ConfigDict(frozen=True)

    @property
    def is_true(self) -> bool:
        """Check whether this is the constant-true condition."""
        return self.expr is None

    def variables(self) -> List[Variable]:
        """Get the variables of this condition in order of first occurrence."""
        if self.expr is None:
            return []
        return variables_of(self.expr)

    def predicate_names(self) -> Set[str]:
        """Get the names of all predicate leaves."""
        if self.expr is None:
            return set()
        return {leaf.name for leaf in iter_leaves(self.expr) if isinstance(leaf, PredicateLeaf)}

    def constants(self) -> Set[Value]:
        """Get all constants occurring in this condition."""
        if self.expr is None:
            return set()
        found: Set[Value] = set()
        for leaf in iter_leaves(self.expr):
            terms = leaf.args if isinstance(leaf, PredicateLeaf) else (leaf.left, leaf.right)
            found.update(term for term in terms if not isinstance(term, Variable))
        return found

    def unrestricted_variables(self) -> List[Variable]:
        """
        Get the variables not bound by any positive predicate leaf.

        A positive leaf is one that does not lie beneath a negation. A
        condition is range-restricted when this list is empty.
        """
        if self.expr is None:
            return []
        bound: Set[Variable] = set()
        _collect_positive_bindings(self.expr, bound)
        return [variable for variable in self.variables() if variable not in bound]


TRUE_CONDITION = Condition()


def leaf_terms(leaf: Union[PredicateLeaf, ComparisonLeaf]) -> Tuple[Term, ...]:
    """Get the terms of a leaf in order."""
    if isinstance(leaf, PredicateLeaf):
        return leaf.args
    return (leaf.left, leaf.right)


def iter_leaves(expr: ConditionExpr) -> Iterator[Union[PredicateLeaf, ComparisonLeaf]]:
    """Iterate over the leaves of an expression in pre-order."""
    if isinstance(expr, (PredicateLeaf, ComparisonLeaf)):
        yield expr
    elif isinstance(expr, NotExpr):
        yield from iter_leaves(expr.operand)
    else:
        for operand in expr.operands:
            yield from iter_leaves(operand)


MAX_CONDITION_DEPTH = 100
"""Deepest expression nesting accepted in a policy file; a leaf has depth 1."""


def expr_depth(expr: ConditionExpr) -> int:
    """Get the nesting depth of an expression without recursing."""
    deepest = 0
    pending: List[Tuple[ConditionExpr, int]] = [(expr, 1)]
    while pending:
        node, depth = pending.pop()
        deepest = max(deepest, depth)
        if isinstance(node, NotExpr):
            pending.append((node.operand, depth + 1))
        elif isinstance(node, (AndExpr, OrExpr)):
            pending.extend((operand, depth + 1) for operand in node.operands)
    return deepest


def variables_of(expr: ConditionExpr) -> List[Variable]:
    """Get the variables of an expression in order of first occurrence."""
    seen: List[Variable] = []
    for leaf in iter_leaves(expr):
        for term in leaf_terms(leaf):
            if isinstance(term, Variable) and term not in seen:
                seen.append(term)
    return seen


def _collect_positive_bindings(expr: ConditionExpr, bound: Set[Variable]) -> None:
    if isinstance(expr, PredicateLeaf):
        bound.update(term for term in expr.args if isinstance(term, Variable))
    elif isinstance(expr, (AndExpr, OrExpr)):
        for operand in expr.operands:
            _collect_positive_bindings(operand, bound)


def format_expr(expr: ConditionExpr) -> str:
    """
    Render an expression in policy-file syntax.

    Nested conjunctions and disjunctions are parenthesized so that the
    rendering parses back to the same tree.
    """
    if isinstance(expr, PredicateLeaf):
        return f"{expr.name}({', '.join(format_term(arg) for arg in expr.args)})"
    if isinstance(expr, ComparisonLeaf):
        return f"{format_term(expr.left)} {expr.op.value} {format_term(expr.right)}"
    if isinstance(expr, NotExpr):
        return f"not {_format_operand(expr.operand)}"
    joiner = " and " if isinstance(expr, AndExpr) else " or "
    return joiner.join(_format_operand(operand) for operand in expr.operands)


def _format_operand(expr: ConditionExpr) -> str:
    if isinstance(expr, (AndExpr, OrExpr)):
        return f"({format_expr(expr)})"
    return format_expr(expr)
