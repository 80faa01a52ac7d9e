"""
Policy file parser.

Reads the textual policy language: one definition per policy set, policy
and rule, in any order.

    policyset ps1 = [null, <p1>, po]
    policy p1 = [target(subject(doctor)), <r1, r2>, do]
    rule r1 = [permit, target((subject(doctor) & action(read))), true]
    rule r2 = [deny, null, cond(patient_id(X) and not consent(X))]
"""

import logging
from typing import Any, List, Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from xacml_analyzer.exception.exceptions import PolicySyntaxException, XacmlAnalyzerException
from xacml_analyzer.models.condition import (
    MAX_CONDITION_DEPTH,
    TRUE_CONDITION,
    AndExpr,
    ComparisonLeaf,
    ComparisonOperator,
    Condition,
    NotExpr,
    OrExpr,
    PredicateLeaf,
    expr_depth,
)
from xacml_analyzer.models.enums import AttrCategory, CombiningAlgorithm, Effect
from xacml_analyzer.models.policy import (
    NULL_TARGET,
    AllOf,
    AnyOf,
    Match,
    ParsedComponent,
    Policy,
    PolicySet,
    Rule,
    Target,
)
from xacml_analyzer.models.source_span import SourceSpan
from xacml_analyzer.models.terms import Variable
from xacml_analyzer.parser.syntax_errors import (
    span_from_meta,
    span_from_token,
    translate_lark_error,
)

logger = logging.getLogger(__name__)

POLICY_GRAMMAR = r"""
start: component*

?component: policyset
          | policy
          | rule

policyset: "policyset" ID "=" "[" target "," "<" id_list ">" "," NAME "]"
policy: "policy" ID "=" "[" target "," "<" id_list ">" "," NAME "]"
rule: "rule" ID "=" "[" NAME "," target "," condition "]"

id_list: ID ("," ID)*

target: "null"                                -> null_target
      | "target" "(" anyof ("," anyof)* ")"   -> target

?anyof: anyof_body
      | "(" anyof_body ")"
anyof_body: allof ("|" allof)*
allof: match ("&" match)*
match: NAME "(" NAME ")"

condition: "true"                   -> true_condition
         | "cond" "(" or_expr ")"   -> cond

?or_expr: and_expr ("or" and_expr)+     -> or_
        | and_expr
?and_expr: not_expr ("and" not_expr)+   -> and_
         | not_expr
?not_expr: NOT+ atom                    -> not_
         | atom
?atom: NAME "(" term ("," term)* ")"    -> predicate
     | term "==" term                   -> eq
     | term "!=" term                   -> neq
     | "(" or_expr ")"

term: VARIABLE   -> variable
    | NAME       -> symbol
    | INT        -> integer

NOT: "not"
ID: /[A-Za-z_][A-Za-z0-9_]*/
NAME: /[a-z][A-Za-z0-9_]*/
VARIABLE: /[A-Z][A-Za-z0-9_]*/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_POLICY_PARSER = Lark(POLICY_GRAMMAR, parser="lalr", propagate_positions=True)


class PolicyTransformer(Transformer):
    """Builds policy components from a policy-file parse tree."""

    def __init__(self, source: Optional[str] = None) -> None:
        super().__init__()
        self._source = source

    def start(self, components: List[ParsedComponent]) -> List[ParsedComponent]:
        return list(components)

    @v_args(meta=True)
    def policyset(self, meta: Any, children: List[Any]) -> ParsedComponent:
        component_id, target, child_ids, algorithm = children
        component = PolicySet(
            id=str(component_id),
            target=target,
            children=child_ids,
            algorithm=self._algorithm(algorithm),
        )
        return ParsedComponent(component=component, span=span_from_meta(meta, self._source))

    @v_args(meta=True)
    def policy(self, meta: Any, children: List[Any]) -> ParsedComponent:
        component_id, target, child_ids, algorithm = children
        component = Policy(
            id=str(component_id),
            target=target,
            children=child_ids,
            algorithm=self._algorithm(algorithm),
        )
        return ParsedComponent(component=component, span=span_from_meta(meta, self._source))

    @v_args(meta=True)
    def rule(self, meta: Any, children: List[Any]) -> ParsedComponent:
        component_id, effect, target, condition = children
        component = Rule(
            id=str(component_id),
            effect=self._effect(effect),
            target=target,
            condition=condition,
        )
        return ParsedComponent(component=component, span=span_from_meta(meta, self._source))

    def id_list(self, ids: List[Token]) -> tuple:
        return tuple(str(token) for token in ids)

    def null_target(self, _: List[Any]) -> Target:
        return NULL_TARGET

    def target(self, anyofs: List[AnyOf]) -> Target:
        return Target(anyofs=tuple(anyofs))

    def anyof_body(self, allofs: List[AllOf]) -> AnyOf:
        return AnyOf(allofs=tuple(allofs))

    def allof(self, matches: List[Match]) -> AllOf:
        return AllOf(matches=tuple(matches))

    def match(self, children: List[Token]) -> Match:
        category, value = children
        if category not in AttrCategory.names():
            raise PolicySyntaxException(
                f"unknown attribute category '{category}'",
                span=span_from_token(category, self._source),
                expected=AttrCategory.names(),
            )
        return Match(category=AttrCategory(str(category)), value=str(value))

    def true_condition(self, _: List[Any]) -> Condition:
        return TRUE_CONDITION

    @v_args(meta=True)
    def cond(self, meta: Any, children: List[Any]) -> Condition:
        expr = children[0]
        if expr_depth(expr) > MAX_CONDITION_DEPTH:
            raise _too_deep(span_from_meta(meta, self._source))
        return Condition(expr=expr)

    def or_(self, operands: List[Any]) -> OrExpr:
        return OrExpr(operands=tuple(operands))

    def and_(self, operands: List[Any]) -> AndExpr:
        return AndExpr(operands=tuple(operands))

    def not_(self, children: List[Any]) -> NotExpr:
        *negations, expr = children
        for _ in negations:
            expr = NotExpr(operand=expr)
        return expr

    def predicate(self, children: List[Any]) -> PredicateLeaf:
        name, *args = children
        return PredicateLeaf(name=str(name), args=tuple(args))

    def eq(self, children: List[Any]) -> ComparisonLeaf:
        return ComparisonLeaf(op=ComparisonOperator.EQ, left=children[0], right=children[1])

    def neq(self, children: List[Any]) -> ComparisonLeaf:
        return ComparisonLeaf(op=ComparisonOperator.NEQ, left=children[0], right=children[1])

    def variable(self, children: List[Token]) -> Variable:
        return Variable(name=str(children[0]))

    def symbol(self, children: List[Token]) -> str:
        return str(children[0])

    def integer(self, children: List[Token]) -> int:
        return int(children[0])

    def _effect(self, token: Token) -> Effect:
        try:
            return Effect(str(token))
        except ValueError:
            raise PolicySyntaxException(
                f"unknown effect '{token}'",
                span=span_from_token(token, self._source),
                expected=[effect.value for effect in Effect],
            ) from None

    def _algorithm(self, token: Token) -> CombiningAlgorithm:
        try:
            return CombiningAlgorithm(str(token))
        except ValueError:
            raise PolicySyntaxException(
                f"unknown combining algorithm '{token}'",
                span=span_from_token(token, self._source),
                expected=[algorithm.value for algorithm in CombiningAlgorithm],
            ) from None


def _too_deep(span: Optional[SourceSpan]) -> PolicySyntaxException:
    where = f" at {span}" if span is not None else ""
    return PolicySyntaxException(
        f"policy: condition nested deeper than {MAX_CONDITION_DEPTH} levels{where}", span=span
    )


def parse_policy_file(text: str, source: Optional[str] = None) -> List[ParsedComponent]:
    """
    Parse policy text into components with their source spans.

    Args:
        text: Policy-file contents
        source: Input name used in spans and messages

    Returns:
        One ParsedComponent per definition, in file order

    Raises:
        PolicySyntaxException: On malformed input, unknown effects,
            unknown combining algorithms or unknown attribute categories

    Examples:
        >>> parse_policy_file("rule r1 = [permit, null, true]")[0].component.id
        'r1'
    """
    try:
        tree = _POLICY_PARSER.parse(text)
    except UnexpectedInput as error:
        raise translate_lark_error(error, _POLICY_PARSER, "policy", source) from error
    try:
        components = PolicyTransformer(source).transform(tree)
    except RecursionError:
        raise _too_deep(None) from None
    except VisitError as error:
        if isinstance(error.orig_exc, RecursionError):
            raise _too_deep(span_from_meta(error.obj.meta, source)) from None
        if isinstance(error.orig_exc, XacmlAnalyzerException):
            raise error.orig_exc from None
        raise PolicySyntaxException(
            f"policy: {error.orig_exc}", span=span_from_meta(error.obj.meta, source)
        ) from error.orig_exc
    logger.debug("Parsed %d components from %s", len(components), source or "<text>")
    return components
