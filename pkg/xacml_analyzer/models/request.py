"""
Request model.

A request is a finite set of ground facts: category facts such as
subject(doctor) and, optionally, external-state facts over relations
declared in the attribute domains.
"""

from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field

from xacml_analyzer.models.enums import AttrCategory
from xacml_analyzer.models.terms import IDENTIFIER_PATTERN, Value, format_value, value_sort_key


class Fact(BaseModel):
    """
    A ground atom.

    Attributes:
        predicate: Category or relation name
        args: Constant arguments
    """

    predicate: str = Field(pattern=IDENTIFIER_PATTERN)
    args: Tuple[Value, ...] = Field(min_length=1)

    model_config = ConfigDict(frozen=True)

    @property
    def is_category_fact(self) -> bool:
        """Check whether this fact carries an attribute-category value."""
        return self.predicate in AttrCategory.names()

    def sort_key(self) -> Tuple:
        """Sort key: category facts in canonical order, then other facts by name."""
        if self.is_category_fact:
            rank = (0, AttrCategory.names().index(self.predicate), "")
        else:
            rank = (1, 0, self.predicate)
        return rank + tuple(value_sort_key(arg) for arg in self.args)

    def __str__(self) -> str:
        return f"{self.predicate}({', '.join(format_value(arg) for arg in self.args)})"

    @classmethod
    def of(cls, predicate: str, *args: Value) -> "Fact":
        """Create a fact from a predicate and its arguments."""
        return cls(predicate=predicate, args=tuple(args))


class Request(BaseModel):
    """
    A set of ground facts presented to the decision point.

    Attributes:
        facts: The request's facts; duplicates collapse
    """

    facts: FrozenSet[Fact] = frozenset()

    model_config = ConfigDict(frozen=True)

    def values(self, category: AttrCategory) -> Set[str]:
        """Get the values the request carries for a category."""
        return {
            str(fact.args[0])
            for fact in self.facts
            if fact.predicate == category.value and len(fact.args) == 1
        }

    def tuples(self, predicate: str) -> Set[Tuple[Value, ...]]:
        """Get the argument tuples of all facts over a predicate."""
        return {fact.args for fact in self.facts if fact.predicate == predicate}

    def has(self, category: AttrCategory, value: str) -> bool:
        """Check whether the request carries a category value."""
        return Fact(predicate=category.value, args=(value,)) in self.facts

    def sorted_facts(self) -> List[Fact]:
        """Get the facts in canonical order."""
        return sorted(self.facts, key=lambda fact: fact.sort_key())

    def category_tokens(self) -> Tuple[Tuple[str, ...], ...]:
        """Get the sorted values of each category, in canonical category order."""
        return tuple(tuple(sorted(self.values(category))) for category in AttrCategory.ordered())

    def to_json_dict(self) -> Dict[str, List[str]]:
        """Render the request as a mapping from predicate to rendered argument lists."""
        rendered: Dict[str, List[str]] = {}
        for fact in self.sorted_facts():
            rendered.setdefault(fact.predicate, []).append(
                ", ".join(format_value(arg) for arg in fact.args)
            )
        return rendered

    def __str__(self) -> str:
        return "{" + ", ".join(str(fact) for fact in self.sorted_facts()) + "}"

    @classmethod
    def of(
        cls,
        attributes: Mapping[AttrCategory, Iterable[str]],
        external: Sequence[Fact] = (),
    ) -> "Request":
        """
        Create a request from category values and external facts.

        Examples:
            >>> Request.of({AttrCategory.SUBJECT: ["doctor"], AttrCategory.ACTION: ["read"]})
        """
        facts = {
            Fact(predicate=category.value, args=(value,))
            for category, values in attributes.items()
            for value in values
        }
        facts.update(external)
        return cls(facts=frozenset(facts))
