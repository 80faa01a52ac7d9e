"""
Reader for the ASP subset the emitter writes.

Accepts facts, normal rules with default negation, comparisons
(=, ==, !=, <), integrity constraints and bodiless cardinality choice
rules such as 1 { subject(X) : subject_db(X) } 1. Comments start with %.
"""

import logging
from typing import List, Optional

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from xacml_analyzer.exception.exceptions import PolicySyntaxException, XacmlAnalyzerException
from xacml_analyzer.models.terms import Variable
from xacml_analyzer.parser.syntax_errors import translate_lark_error
from xacml_analyzer.lp.program import (
    Atom,
    ChoiceHead,
    Comparison,
    ComparisonOp,
    Literal,
    LogicProgram,
    LPRule,
)

logger = logging.getLogger(__name__)

PROGRAM_GRAMMAR = r"""
start: statement*

statement: atom "."                 -> fact_statement
         | atom ":-" body "."       -> rule_statement
         | ":-" body "."            -> constraint_statement
         | choice "."               -> choice_statement

choice: [INT] "{" atom choice_condition? "}" [INT]
choice_condition: ":" atom ("," atom)*

body: body_element ("," body_element)*
body_element: atom                  -> positive
            | "not" atom            -> negative
            | term COMPARISON term  -> comparison

atom: NAME ("(" term ("," term)* ")")?

term: VARIABLE   -> variable
    | NAME       -> symbol
    | INT        -> integer
    | STRING     -> string

COMPARISON: "!=" | "==" | "=" | "<"
NAME: /[a-z][A-Za-z0-9_]*/
VARIABLE: /[A-Z][A-Za-z0-9_]*/
INT: /[0-9]+/
STRING: /"(\\.|[^"\\])*"/
COMMENT: /%[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_PROGRAM_PARSER = Lark(PROGRAM_GRAMMAR, parser="lalr", maybe_placeholders=True)

_OPERATORS = {
    "=": ComparisonOp.EQ,
    "==": ComparisonOp.EQ,
    "!=": ComparisonOp.NEQ,
    "<": ComparisonOp.LT,
}


class ProgramTransformer(Transformer):
    """Builds LPRules from a program parse tree."""

    def start(self, rules: List[LPRule]) -> LogicProgram:
        return LogicProgram(rules)

    def fact_statement(self, children: List[Atom]) -> LPRule:
        return LPRule(head=children[0])

    def rule_statement(self, children: list) -> LPRule:
        head, body = children
        return LPRule(head=head, body=tuple(body))

    def constraint_statement(self, children: list) -> LPRule:
        return LPRule(body=tuple(children[0]))

    def choice_statement(self, children: List[ChoiceHead]) -> LPRule:
        return LPRule(choice=children[0])

    def choice(self, children: list) -> ChoiceHead:
        lower, element, *conditions, upper = children
        generators = conditions[0] if conditions else ()
        return ChoiceHead(
            lower=int(lower) if lower is not None else 0,
            upper=int(upper) if upper is not None else None,
            element=element,
            condition=generators,
        )

    def choice_condition(self, atoms: List[Atom]) -> tuple:
        return tuple(atoms)

    def body(self, elements: list) -> list:
        return list(elements)

    def positive(self, children: List[Atom]) -> Literal:
        return Literal(children[0])

    def negative(self, children: List[Atom]) -> Literal:
        return Literal(children[0], negated=True)

    def comparison(self, children: list) -> Comparison:
        left, operator, right = children
        return Comparison(_OPERATORS[str(operator)], left, right)

    def atom(self, children: list) -> Atom:
        name, *args = children
        return Atom(str(name), tuple(args))

    def variable(self, children: List[Token]) -> Variable:
        return Variable(name=str(children[0]))

    def symbol(self, children: List[Token]) -> str:
        return str(children[0])

    def integer(self, children: List[Token]) -> int:
        return int(children[0])

    def string(self, children: List[Token]) -> str:
        raw = str(children[0])[1:-1]
        return raw.replace('\\"', '"').replace("\\\\", "\\")


def parse_program(text: str, source: Optional[str] = None) -> LogicProgram:
    """
    Parse a logic program.

    Args:
        text: Program text
        source: Input name used in messages

    Returns:
        The program, rules in file order

    Raises:
        PolicySyntaxException: On malformed input

    Examples:
        >>> print(parse_program("q(X) :- p(X). p(a)."))
        q(X) :- p(X).
        p(a).
    """
    try:
        tree = _PROGRAM_PARSER.parse(text)
    except UnexpectedInput as error:
        raise translate_lark_error(error, _PROGRAM_PARSER, "program", source) from error
    try:
        program = ProgramTransformer().transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, XacmlAnalyzerException):
            raise error.orig_exc from None
        raise PolicySyntaxException(f"program: {error.orig_exc}") from error.orig_exc
    logger.debug("Parsed program with %d rules", len(program))
    return program
