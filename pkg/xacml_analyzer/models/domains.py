"""
Attribute domain model.

Declares, per attribute category, the finite set of values a request may
carry, plus named relations that conditions can query.
"""

import hashlib
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from xacml_analyzer.models.enums import AttrCategory
from xacml_analyzer.models.terms import Value, format_value, value_sort_key

RESERVED_PREDICATES = frozenset(
    {
        "val",
        "dec",
        "algo",
        "comb",
        "eval",
        "condition",
        "const",
        "rule",
        "blocked",
        "not_one_applicable",
        "reachable",
        "not_reachable",
        "gap",
        "conflict",
        "conflict_pair",
    }
)
"""Predicates written by the logic-program transformation"""


def is_reserved_predicate(name: str) -> bool:
    """Check whether a name collides with a transformation predicate."""
    return (
        name in RESERVED_PREDICATES
        or name.startswith("holds_")
        or name.endswith("_db")
        or name in AttrCategory.names()
    )


def _row_sort_key(row: Tuple[Value, ...]) -> List[Tuple[int, Any]]:
    return [value_sort_key(value) for value in row]


class AttributeDomains(BaseModel):
    """
    Finite attribute domains and relations.

    Both mappings are normalized on construction: every category is
    present with its tokens sorted, relations are sorted by name and their
    tuples deduplicated and sorted.

    Attributes:
        values: Tokens per category
        relations: Tuples per relation name
    """

    values: Dict[AttrCategory, Tuple[str, ...]] = Field(
        default_factory=dict, validate_default=True
    )
    relations: Dict[str, Tuple[Tuple[Value, ...], ...]] = Field(
        default_factory=dict, validate_default=True
    )

    model_config = ConfigDict(frozen=True)

    @field_validator("values")
    @classmethod
    def _normalize_values(
        cls, values: Dict[AttrCategory, Tuple[str, ...]]
    ) -> Dict[AttrCategory, Tuple[str, ...]]:
        for category, tokens in values.items():
            if len(set(tokens)) != len(tokens):
                raise ValueError(f"duplicate token in category '{category.value}'")
        return {
            category: tuple(sorted(values.get(category, ())))
            for category in AttrCategory.ordered()
        }

    @field_validator("relations")
    @classmethod
    def _normalize_relations(
        cls, relations: Dict[str, Tuple[Tuple[Value, ...], ...]]
    ) -> Dict[str, Tuple[Tuple[Value, ...], ...]]:
        for name, rows in relations.items():
            if is_reserved_predicate(name):
                raise ValueError(f"relation name '{name}' is reserved")
            arities = {len(row) for row in rows}
            if len(arities) > 1:
                raise ValueError(f"relation '{name}' mixes arities {sorted(arities)}")
        return {
            name: tuple(sorted(set(relations[name]), key=_row_sort_key))
            for name in sorted(relations)
        }

    def tokens(self, category: AttrCategory) -> Tuple[str, ...]:
        """Get a category's tokens in sorted order."""
        return self.values[category]

    def size(self, category: AttrCategory) -> int:
        """Get the number of tokens declared for a category."""
        return len(self.values[category])

    def contains(self, category: AttrCategory, token: str) -> bool:
        """Check whether a token is declared for a category."""
        return token in self.values[category]

    def has_relation(self, name: str) -> bool:
        """Check whether a relation is declared."""
        return name in self.relations

    def relation(self, name: str) -> Tuple[Tuple[Value, ...], ...]:
        """Get the tuples of a declared relation."""
        return self.relations.get(name, ())

    def relation_arity(self, name: str) -> int:
        """Get the arity of a declared relation, or 0 if it has no tuples."""
        rows = self.relations.get(name, ())
        return len(rows[0]) if rows else 0

    def universe(self) -> Tuple[Value, ...]:
        """
        Get every constant the domains mention, in sorted order.

        Condition variables range over this set.
        """
        found = {token for tokens in self.values.values() for token in tokens}
        found.update(value for rows in self.relations.values() for row in rows for value in row)
        return tuple(sorted(found, key=value_sort_key))

    def sizes(self) -> Dict[str, int]:
        """Get the number of tokens per category, keyed by category name."""
        return {category.value: self.size(category) for category in AttrCategory.ordered()}

    def canonical_text(self) -> str:
        """Render the domains in file syntax; empty categories are omitted."""
        lines: List[str] = []
        for category in AttrCategory.ordered():
            if self.values[category]:
                lines.append(f"{category.section}: {', '.join(self.values[category])}")
        for name, rows in self.relations.items():
            rendered = ", ".join(
                "(" + ", ".join(format_value(value) for value in row) + ")" for row in rows
            )
            lines.append(f"relation {name}: {rendered}")
        return "".join(line + "\n" for line in lines)

    def fingerprint(self) -> str:
        """Get a SHA-256 digest of the canonical text."""
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()

    @classmethod
    def of(cls, **tokens: List[str]) -> "AttributeDomains":
        """
        Create domains from keyword arguments named after the categories.

        Examples:
            >>> AttributeDomains.of(subject=["doctor", "nurse"], action=["read"])
        """
        return cls(
            values={AttrCategory(name): tuple(values) for name, values in tokens.items()}
        )
