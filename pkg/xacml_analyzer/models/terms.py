"""
Terms shared by policy conditions and logic programs.

A term is either a Variable or a constant value. Constants are lower-case
identifier tokens (str) or integers (int).
"""

import re
from typing import Any, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

Value = Union[int, str]
"""A constant: an identifier token or an integer"""

IDENTIFIER_PATTERN = r"^[a-z][A-Za-z0-9_]*$"
VARIABLE_PATTERN = r"^[A-Z][A-Za-z0-9_]*$"

_IDENTIFIER_RE = re.compile(IDENTIFIER_PATTERN)


class Variable(BaseModel):
    """
    A logic variable.

    Attributes:
        name: Variable name, starting with an upper-case letter
    """

    name: str = Field(pattern=VARIABLE_PATTERN)

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Variable({self.name})"


Term = Union[Variable, int, str]
"""A variable or a constant"""


def is_variable(term: Any) -> bool:
    """Check whether a term is a variable."""
    return isinstance(term, Variable)


def is_symbol(value: Value) -> bool:
    """Check whether a string constant can be written without quotes."""
    return isinstance(value, str) and _IDENTIFIER_RE.match(value) is not None


def value_sort_key(value: Value) -> Tuple[int, Any]:
    """
    Total order on constants: integers before strings, each in natural order.

    Args:
        value: Constant to order

    Returns:
        Sort key for the constant
    """
    if isinstance(value, int):
        return (0, value)
    return (1, value)


def format_value(value: Value) -> str:
    """
    Render a constant in policy, domains and request file syntax.

    Strings that are not lower-case identifiers are quoted.

    Args:
        value: Constant to render

    Returns:
        Rendered constant
    """
    if isinstance(value, int):
        return str(value)
    if is_symbol(value):
        return value
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def format_term(term: Term) -> str:
    """Render a variable or constant."""
    if isinstance(term, Variable):
        return term.name
    return format_value(term)


ASP_RESERVED_WORDS = frozenset({"not"})
"""Lower-case words that cannot stand as bare constants in a logic program."""


def format_lp_value(value: Value) -> str:
    """
    Render a constant in logic-program syntax.

    Like format_value, except that reserved words are quoted.

    Args:
        value: Constant to render

    Returns:
        Rendered constant
    """
    if isinstance(value, str) and value in ASP_RESERVED_WORDS:
        return f'"{value}"'
    return format_value(value)


def format_lp_term(term: Term) -> str:
    """Render a variable or constant in logic-program syntax."""
    if isinstance(term, Variable):
        return term.name
    return format_lp_value(term)
