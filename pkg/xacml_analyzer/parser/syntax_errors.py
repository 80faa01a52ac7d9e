"""
Helpers that turn lark positions and errors into analyzer types.
"""

from typing import List, Optional

from lark import Lark, Token
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken
from lark.lexer import PatternStr
from lark.tree import Meta

from xacml_analyzer.exception.exceptions import PolicySyntaxException
from xacml_analyzer.models.source_span import SourceSpan


def span_from_meta(meta: Meta, source: Optional[str] = None) -> Optional[SourceSpan]:
    """Build a span from the positions lark attaches to a tree."""
    if getattr(meta, "empty", True):
        return None
    return SourceSpan(
        line=meta.line,
        column=meta.column,
        end_line=meta.end_line,
        end_column=meta.end_column,
        source=source,
    )


def span_from_token(token: Token, source: Optional[str] = None) -> SourceSpan:
    """Build a span covering a single token."""
    return SourceSpan(
        line=token.line or 1,
        column=token.column or 1,
        end_line=token.end_line,
        end_column=token.end_column,
        source=source,
    )


def describe_terminals(lark: Lark, names: "set[str]") -> List[str]:
    """
    Render terminal names the way they appear in the input.

    Anonymous literal terminals are shown as their quoted text; named
    terminals keep their name.
    """
    described = set()
    for name in names:
        if name == "$END":
            described.add("end of input")
            continue
        try:
            pattern = lark.get_terminal(name).pattern
        except KeyError:
            described.add(name)
            continue
        described.add(f'"{pattern.value}"' if isinstance(pattern, PatternStr) else name)
    return sorted(described)


def translate_lark_error(
    error: UnexpectedInput, lark: Lark, what: str, source: Optional[str] = None
) -> PolicySyntaxException:
    """
    Convert a lark parse error into a PolicySyntaxException.

    Args:
        error: The error raised by lark
        lark: Parser that raised it, used to describe expected tokens
        what: Kind of input being parsed, for the message
        source: Input name for the span

    Returns:
        The exception to raise
    """
    line = getattr(error, "line", None) or 1
    column = getattr(error, "column", None) or 1
    if line < 1:
        line = 1
    if column < 1:
        column = 1
    span = SourceSpan(line=line, column=column, source=source)
    if isinstance(error, UnexpectedToken):
        expected = describe_terminals(lark, error.expected)
        found = "end of input" if error.token.type == "$END" else f"'{error.token}'"
        message = f"{what}: unexpected {found} at {span}"
    elif isinstance(error, UnexpectedCharacters):
        expected = describe_terminals(lark, error.allowed or set())
        message = f"{what}: unexpected character '{error.char}' at {span}"
    else:
        expected = describe_terminals(lark, getattr(error, "expected", set()) or set())
        message = f"{what}: unexpected end of input at {span}"
    if expected:
        message += f"; expected one of {', '.join(expected)}"
    return PolicySyntaxException(message, span=span, expected=expected, cause=error)
