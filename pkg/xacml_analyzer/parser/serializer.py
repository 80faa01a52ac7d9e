"""
Serializers for stores, requests and domains.

Every rendering parses back to a structurally equal value. Store output
is canonical: definitions in pre-order, one per line.
"""

from functools import singledispatch
from typing import List

from xacml_analyzer.models.condition import Condition, format_expr
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.policy import AnyOf, Component, PolicySet, Rule, Target
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore


def format_target(target: Target) -> str:
    """Render a target; AnyOfs are always parenthesized."""
    if target.is_null:
        return "null"
    return "target(" + ", ".join(_format_anyof(anyof) for anyof in target.anyofs) + ")"


def _format_anyof(anyof: AnyOf) -> str:
    allofs = (" & ".join(str(match) for match in allof.matches) for allof in anyof.allofs)
    return "(" + " | ".join(allofs) + ")"


def format_condition(condition: Condition) -> str:
    """Render a condition."""
    if condition.expr is None:
        return "true"
    return f"cond({format_expr(condition.expr)})"


def format_component(component: Component) -> str:
    """Render one definition."""
    if isinstance(component, Rule):
        return (
            f"rule {component.id} = [{component.effect.value}, "
            f"{format_target(component.target)}, {format_condition(component.condition)}]"
        )
    keyword = "policyset" if isinstance(component, PolicySet) else "policy"
    return (
        f"{keyword} {component.id} = [{format_target(component.target)}, "
        f"<{', '.join(component.children)}>, {component.algorithm.value}]"
    )


def serialize_store(store: PolicyStore) -> str:
    """Render a store in pre-order, one definition per line."""
    return "".join(format_component(component) + "\n" for component in store)


def serialize_request(request: Request) -> str:
    """Render a request with its facts in canonical order."""
    return str(request) + "\n"


def serialize_domains(domains: AttributeDomains) -> str:
    """Render domains with sections in canonical order and sorted tokens."""
    return domains.canonical_text()


@singledispatch
def serialize(value: object) -> str:
    """
    Render a store, request or domains in its file syntax.

    Raises:
        TypeError: For any other value
    """
    raise TypeError(f"cannot serialize {type(value).__name__}")


@serialize.register
def _(value: PolicyStore) -> str:
    return serialize_store(value)


@serialize.register
def _(value: Request) -> str:
    return serialize_request(value)


@serialize.register
def _(value: AttributeDomains) -> str:
    return serialize_domains(value)


def serialize_components(components: List[Component]) -> str:
    """Render loose components in the given order."""
    return "".join(format_component(component) + "\n" for component in components)


__all__ = [
    "format_component",
    "format_condition",
    "format_target",
    "serialize",
    "serialize_components",
    "serialize_domains",
    "serialize_request",
    "serialize_store",
]
