"""
Attribute-domain file parser.

    subjects: doctor, nurse
    actions: read, write
    resources: record
    relation patient_id: (5), (7)

Omitted sections declare an empty domain.
"""

import logging
from typing import Any, Dict, List, Optional, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError
from pydantic import ValidationError

from xacml_analyzer.exception.exceptions import DomainFileException, XacmlAnalyzerException
from xacml_analyzer.models.domains import AttributeDomains, is_reserved_predicate
from xacml_analyzer.models.enums import AttrCategory
from xacml_analyzer.models.terms import Value
from xacml_analyzer.parser.syntax_errors import span_from_meta, translate_lark_error

logger = logging.getLogger(__name__)

DOMAINS_GRAMMAR = r"""
start: (section | relation)*

section: section_name ":" [tokens]
!section_name: "subjects" | "actions" | "resources" | "environments"
tokens: NAME ("," NAME)*

relation: "relation" NAME ":" row ("," row)*
row: "(" value ("," value)* ")"
value: NAME   -> symbol
     | INT    -> integer

NAME: /[a-z][A-Za-z0-9_]*/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_DOMAINS_PARSER = Lark(
    DOMAINS_GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=True
)

_SECTIONS = {category.section: category for category in AttrCategory.ordered()}


class DomainsTransformer(Transformer):
    """Collects sections and relations into AttributeDomains."""

    def __init__(self, source: Optional[str] = None) -> None:
        super().__init__()
        self._source = source

    def start(self, items: List[Tuple[str, Any, Any]]) -> AttributeDomains:
        values: Dict[AttrCategory, Tuple[str, ...]] = {}
        relations: Dict[str, Tuple[Tuple[Value, ...], ...]] = {}
        for kind, key, payload in items:
            if kind == "section":
                if key in values:
                    raise DomainFileException(f"section '{key.section}' declared twice")
                values[key] = payload
            else:
                if key in relations:
                    raise DomainFileException(f"relation '{key}' declared twice")
                relations[key] = payload
        try:
            return AttributeDomains(values=values, relations=relations)
        except ValidationError as error:
            raise DomainFileException(f"invalid attribute domains: {error}", cause=error) from error

    @v_args(meta=True)
    def section(self, meta: Any, children: List[Any]) -> Tuple[str, Any, Any]:
        name, tokens = children
        category = _SECTIONS[name]
        location = span_from_meta(meta, self._source)
        if not tokens:
            raise DomainFileException(
                f"section '{name}' at {location} lists no values; omit it to declare an "
                f"empty domain",
                context={"section": name},
            )
        seen = set()
        for token in tokens:
            if token in seen:
                raise DomainFileException(
                    f"duplicate token '{token}' in section '{name}' at {location}",
                    context={"section": name, "token": token},
                )
            seen.add(token)
        return ("section", category, tuple(tokens))

    def section_name(self, children: List[Token]) -> str:
        return str(children[0])

    def tokens(self, children: List[Token]) -> List[str]:
        return [str(token) for token in children]

    @v_args(meta=True)
    def relation(self, meta: Any, children: List[Any]) -> Tuple[str, Any, Any]:
        name, *rows = children
        name = str(name)
        location = span_from_meta(meta, self._source)
        if is_reserved_predicate(name):
            raise DomainFileException(
                f"relation name '{name}' at {location} is reserved", context={"relation": name}
            )
        arities = {len(row) for row in rows}
        if len(arities) > 1:
            raise DomainFileException(
                f"relation '{name}' at {location} mixes arities {sorted(arities)}",
                context={"relation": name},
            )
        return ("relation", name, tuple(dict.fromkeys(rows)))

    def row(self, values: List[Value]) -> Tuple[Value, ...]:
        return tuple(values)

    def symbol(self, children: List[Token]) -> str:
        return str(children[0])

    def integer(self, children: List[Token]) -> int:
        return int(children[0])


def parse_domains(text: str, source: Optional[str] = None) -> AttributeDomains:
    """
    Parse an attribute-domain file.

    Args:
        text: Domain-file contents
        source: Input name used in messages

    Returns:
        The declared domains

    Raises:
        PolicySyntaxException: On malformed input
        DomainFileException: On duplicate tokens, repeated or empty
            sections, reserved relation names or inconsistent arities

    Examples:
        >>> parse_domains("subjects: doctor, nurse").tokens(AttrCategory.SUBJECT)
        ('doctor', 'nurse')
    """
    try:
        tree = _DOMAINS_PARSER.parse(text)
    except UnexpectedInput as error:
        raise translate_lark_error(error, _DOMAINS_PARSER, "domains", source) from error
    try:
        domains = DomainsTransformer(source).transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, XacmlAnalyzerException):
            raise error.orig_exc from None
        raise DomainFileException(f"domains: {error.orig_exc}", cause=error.orig_exc) from None
    logger.debug("Parsed domains %s from %s", domains.sizes(), source or "<text>")
    return domains
