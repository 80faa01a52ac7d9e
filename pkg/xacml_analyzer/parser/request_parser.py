"""
Request file parser.

    {subject(doctor), action(read), resource(record), patient_id(5)}
"""

import logging
from typing import List, Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from xacml_analyzer.exception.exceptions import RequestFileException, XacmlAnalyzerException
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory
from xacml_analyzer.models.request import Fact, Request
from xacml_analyzer.models.terms import Value
from xacml_analyzer.parser.syntax_errors import span_from_meta, translate_lark_error

logger = logging.getLogger(__name__)

REQUEST_GRAMMAR = r"""
start: "{" [fact ("," fact)*] "}"
fact: NAME "(" value ("," value)* ")"
value: NAME   -> symbol
     | INT    -> integer

NAME: /[a-z][A-Za-z0-9_]*/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_REQUEST_PARSER = Lark(
    REQUEST_GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=False
)


class RequestTransformer(Transformer):
    """Builds a Request, checking each fact against the known predicates."""

    def __init__(
        self, domains: Optional[AttributeDomains] = None, source: Optional[str] = None
    ) -> None:
        super().__init__()
        self._domains = domains
        self._source = source

    def start(self, facts: List[Fact]) -> Request:
        return Request(facts=frozenset(facts))

    @v_args(meta=True)
    def fact(self, meta, children: List[Value]) -> Fact:
        name, *args = children
        name = str(name)
        location = span_from_meta(meta, self._source)
        if name in AttrCategory.names():
            if len(args) != 1 or not isinstance(args[0], str):
                raise RequestFileException(
                    f"malformed fact at {location}: category '{name}' takes one token",
                    context={"predicate": name},
                )
        elif self._domains is not None and self._domains.has_relation(name):
            arity = self._domains.relation_arity(name)
            if arity and len(args) != arity:
                raise RequestFileException(
                    f"malformed fact at {location}: relation '{name}' has arity {arity}",
                    context={"predicate": name},
                )
        else:
            raise RequestFileException(
                f"unknown category '{name}' at {location}", context={"predicate": name}
            )
        return Fact(predicate=name, args=tuple(args))

    def symbol(self, children: List[Token]) -> str:
        return str(children[0])

    def integer(self, children: List[Token]) -> int:
        return int(children[0])


def parse_request(
    text: str, domains: Optional[AttributeDomains] = None, source: Optional[str] = None
) -> Request:
    """
    Parse a request.

    Args:
        text: Request-file contents
        domains: Declared relations; facts over them are accepted as
            external state
        source: Input name used in messages

    Returns:
        The request; duplicate facts collapse

    Raises:
        PolicySyntaxException: On malformed input
        RequestFileException: On unknown categories or wrong arities

    Examples:
        >>> len(parse_request("{subject(doctor), subject(doctor)}").facts)
        1
    """
    try:
        tree = _REQUEST_PARSER.parse(text)
    except UnexpectedInput as error:
        raise translate_lark_error(error, _REQUEST_PARSER, "request", source) from error
    try:
        request = RequestTransformer(domains, source).transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, XacmlAnalyzerException):
            raise error.orig_exc from None
        raise RequestFileException(f"request: {error.orig_exc}", cause=error.orig_exc) from None
    logger.debug("Parsed request with %d facts", len(request.facts))
    return request
