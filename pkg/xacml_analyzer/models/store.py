"""
Policy store.

A PolicyStore is the validated tree of components rooted at a single
PolicySet. build_store resolves child references and checks every tree
invariant; a store obtained from it is always well formed.
"""

import hashlib
import logging
from graphlib import CycleError, TopologicalSorter
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Set, Union

from xacml_analyzer.exception.exceptions import PolicyValidationException
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory
from xacml_analyzer.models.policy import (
    Component,
    Container,
    ParsedComponent,
    Policy,
    PolicySet,
    Rule,
    Target,
)
from xacml_analyzer.models.source_span import SourceSpan

logger = logging.getLogger(__name__)

RESERVED_IDENTIFIERS = frozenset({"null", "cond_true"})
"""Identifiers the logic-program transformation uses for shared constants"""


class PolicyStore:
    """
    The identified tree of components rooted at one PolicySet.

    Components are kept in pre-order: the root first, then each child
    subtree in child order. Equality compares structure only; source
    spans are ignored.
    """

    def __init__(
        self,
        root_id: str,
        components: Mapping[str, Component],
        spans: Optional[Mapping[str, SourceSpan]] = None,
    ) -> None:
        """
        Initialize a store from already validated components.

        Use build_store to construct stores from untrusted input.

        Args:
            root_id: Identifier of the root PolicySet
            components: All components keyed by identifier
            spans: Definition locations keyed by identifier
        """
        self._root_id = root_id
        self._spans: Dict[str, SourceSpan] = dict(spans or {})
        self._parents: Dict[str, str] = {}
        self._positions: Dict[str, int] = {}
        order: List[str] = []
        stack = [root_id]
        while stack:
            component_id = stack.pop()
            order.append(component_id)
            children = components[component_id].children
            for index, child in enumerate(children, start=1):
                self._parents[child] = component_id
                self._positions[child] = index
            stack.extend(reversed(children))
        self._components: Dict[str, Component] = {cid: components[cid] for cid in order}

    @property
    def root_id(self) -> str:
        """Identifier of the root PolicySet."""
        return self._root_id

    @property
    def root(self) -> PolicySet:
        """The root PolicySet."""
        return self._components[self._root_id]  # type: ignore[return-value]

    @property
    def components(self) -> Dict[str, Component]:
        """All components in pre-order."""
        return dict(self._components)

    def get(self, component_id: str) -> Component:
        """Get a component by identifier."""
        return self._components[component_id]

    def parent_of(self, component_id: str) -> Optional[str]:
        """Get the identifier of a component's parent, or None for the root."""
        return self._parents.get(component_id)

    def position_of(self, component_id: str) -> int:
        """Get the 1-based position of a component among its siblings."""
        return self._positions.get(component_id, 1)

    def span_of(self, component_id: str) -> Optional[SourceSpan]:
        """Get where a component was defined, if known."""
        return self._spans.get(component_id)

    def ids(self) -> List[str]:
        """Get all identifiers in pre-order."""
        return list(self._components)

    def rule_ids(self) -> List[str]:
        """Get the rule identifiers in pre-order."""
        return [cid for cid, c in self._components.items() if isinstance(c, Rule)]

    def rules(self) -> List[Rule]:
        """Get the rules in pre-order."""
        return [c for c in self._components.values() if isinstance(c, Rule)]

    def containers(self) -> List[Container]:
        """Get the policies and policy sets in pre-order."""
        return [c for c in self._components.values() if not isinstance(c, Rule)]

    def path_to(self, component_id: str) -> List[str]:
        """Get the identifiers from the root down to a component."""
        path = [component_id]
        while path[-1] in self._parents:
            path.append(self._parents[path[-1]])
        return list(reversed(path))

    def targets(self) -> Iterator[Target]:
        """Iterate over every component target in pre-order."""
        for component in self._components.values():
            yield component.target

    def referenced_categories(self) -> Set[AttrCategory]:
        """Get the categories used by any match of any target."""
        return {match.category for target in self.targets() for match in target.matches()}

    def without_rule(self, rule_id: str) -> "PolicyStore":
        """
        Return a copy of the store with one rule removed.

        Containers left without children are removed from their parents in
        turn.

        Args:
            rule_id: Identifier of the rule to remove

        Returns:
            The reduced store

        Raises:
            PolicyValidationException: If the rule is unknown or removing it
                would empty the root
        """
        if not isinstance(self._components.get(rule_id), Rule):
            raise PolicyValidationException(
                f"unknown rule '{rule_id}'", context={"rule_id": rule_id}
            )
        components = dict(self._components)
        removed = rule_id
        while True:
            del components[removed]
            parent_id = self._parents[removed]
            parent = components[parent_id]
            remaining = tuple(child for child in parent.children if child != removed)
            if remaining:
                components[parent_id] = parent.model_copy(update={"children": remaining})
                break
            if parent_id == self._root_id:
                raise PolicyValidationException(
                    f"removing rule '{rule_id}' would leave root '{parent_id}' without children",
                    context={"rule_id": rule_id},
                )
            removed = parent_id
        spans = {cid: span for cid, span in self._spans.items() if cid in components}
        return PolicyStore(self._root_id, components, spans)

    def canonical_text(self) -> str:
        """Render the store in policy-file syntax, in pre-order."""
        from xacml_analyzer.parser.serializer import serialize_store

        return serialize_store(self)

    def fingerprint(self) -> str:
        """Get a SHA-256 digest of the canonical text."""
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()

    def __iter__(self) -> Iterator[Component]:
        return iter(self._components.values())

    def __len__(self) -> int:
        return len(self._components)

    def __contains__(self, component_id: object) -> bool:
        return component_id in self._components

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolicyStore):
            return NotImplemented
        return self._root_id == other._root_id and self._components == other._components

    def __hash__(self) -> int:
        return hash((self._root_id, tuple(self._components)))

    def __repr__(self) -> str:
        return f"PolicyStore(root={self._root_id!r}, components={len(self._components)})"


def build_store(
    components: Iterable[Union[Component, ParsedComponent]],
    domains: Optional[AttributeDomains] = None,
) -> PolicyStore:
    """
    Resolve child references and validate the component tree.

    Args:
        components: Components, bare or with their source spans
        domains: When given, every match value and condition predicate is
            checked against the declared domains

    Returns:
        A well-formed PolicyStore

    Raises:
        PolicyValidationException: On duplicate identifiers, reserved
            identifiers, dangling or mistyped child references, components
            with several parents, reference cycles, a missing or ambiguous
            root, undeclared match values, unknown condition predicates or
            conditions that are not range-restricted

    Examples:
        >>> store = build_store([rule, policy, policy_set])
        >>> store.root_id
        'ps1'
    """
    by_id: Dict[str, Component] = {}
    spans: Dict[str, SourceSpan] = {}
    for item in components:
        component = item.component if isinstance(item, ParsedComponent) else item
        span = item.span if isinstance(item, ParsedComponent) else None
        if component.id in by_id:
            first = spans.get(component.id)
            where = f" (first defined at {first}, again at {span})" if first and span else ""
            raise PolicyValidationException(
                f"duplicate identifier '{component.id}'{where}",
                context={"component_id": component.id},
            )
        if component.id in RESERVED_IDENTIFIERS:
            raise PolicyValidationException(
                f"identifier '{component.id}' is reserved", context={"component_id": component.id}
            )
        by_id[component.id] = component
        if span is not None:
            spans[component.id] = span

    parents: Dict[str, str] = {}
    for component in by_id.values():
        for child_id in component.children:
            _check_child(component, child_id, by_id, spans)
            if child_id in parents:
                raise PolicyValidationException(
                    f"component '{child_id}' is referenced by both '{parents[child_id]}' "
                    f"and '{component.id}'",
                    context={"component_id": child_id},
                )
            parents[child_id] = component.id

    _check_acyclic(by_id)

    roots = [cid for cid in by_id if cid not in parents]
    if not roots:
        raise PolicyValidationException("no root: every component has a parent")
    if len(roots) > 1:
        raise PolicyValidationException(
            f"multiple roots: {', '.join(roots)}", context={"roots": roots}
        )
    root_id = roots[0]
    if not isinstance(by_id[root_id], PolicySet):
        raise PolicyValidationException(
            f"root '{root_id}' must be a policy set", context={"component_id": root_id}
        )

    store = PolicyStore(root_id, by_id, spans)
    for rule in store.rules():
        _check_condition(rule, store, domains)
    if domains is not None:
        _check_match_values(store, domains)
    logger.debug(
        "Built store rooted at %s with %d components (%d rules)",
        root_id,
        len(store),
        len(store.rule_ids()),
    )
    return store


def _check_child(
    parent: Component,
    child_id: str,
    by_id: Mapping[str, Component],
    spans: Mapping[str, SourceSpan],
) -> None:
    location = f" at {spans[parent.id]}" if parent.id in spans else ""
    child = by_id.get(child_id)
    if child is None:
        raise PolicyValidationException(
            f"'{parent.id}'{location} refers to undefined component '{child_id}'",
            context={"component_id": parent.id, "child_id": child_id},
        )
    if isinstance(parent, Policy) and not isinstance(child, Rule):
        raise PolicyValidationException(
            f"policy '{parent.id}'{location} may only combine rules, got '{child_id}'",
            context={"component_id": parent.id, "child_id": child_id},
        )
    if isinstance(parent, PolicySet) and isinstance(child, Rule):
        raise PolicyValidationException(
            f"policy set '{parent.id}'{location} may not combine rule '{child_id}' directly",
            context={"component_id": parent.id, "child_id": child_id},
        )


def _check_acyclic(by_id: Mapping[str, Component]) -> None:
    graph = {cid: set(component.children) for cid, component in by_id.items()}
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as error:
        cycle = error.args[1]
        raise PolicyValidationException(
            f"reference cycle: {' -> '.join(cycle)}",
            cause=error,
            context={"components": list(cycle)},
        ) from error


def _check_condition(
    rule: Rule, store: PolicyStore, domains: Optional[AttributeDomains]
) -> None:
    path = "/".join(store.path_to(rule.id))
    unrestricted = rule.condition.unrestricted_variables()
    if unrestricted:
        names = ", ".join(variable.name for variable in unrestricted)
        raise PolicyValidationException(
            f"{path}: condition variables {names} must occur in a predicate outside any 'not'",
            context={"component_id": rule.id, "variables": [v.name for v in unrestricted]},
        )
    if domains is None:
        return
    for name in sorted(rule.condition.predicate_names()):
        if name not in AttrCategory.names() and not domains.has_relation(name):
            raise PolicyValidationException(
                f"{path}: condition predicate '{name}' is neither a category nor a declared "
                f"relation",
                context={"component_id": rule.id, "predicate": name},
            )


def _check_match_values(store: PolicyStore, domains: AttributeDomains) -> None:
    for component in store:
        for a, anyof in enumerate(component.target.anyofs, start=1):
            for b, allof in enumerate(anyof.allofs, start=1):
                for c, match in enumerate(allof.matches, start=1):
                    if domains.contains(match.category, match.value):
                        continue
                    path = "/".join(store.path_to(component.id))
                    raise PolicyValidationException(
                        f"{path}: target anyof[{a}].allof[{b}].match[{c}] value "
                        f"'{match.value}' is not declared for category "
                        f"'{match.category.value}'",
                        context={"component_id": component.id, "match": str(match)},
                    )
