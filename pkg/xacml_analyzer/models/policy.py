"""
Policy component models.

This module provides the target structure (Match, AllOf, AnyOf, Target)
and the three kinds of policy components: Rule, Policy and PolicySet.
Components refer to their children by identifier; the PolicyStore
resolves those references.
"""

from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from xacml_analyzer.models.condition import TRUE_CONDITION, Condition
from xacml_analyzer.models.enums import AttrCategory, CombiningAlgorithm, Effect
from xacml_analyzer.models.source_span import SourceSpan
from xacml_analyzer.models.terms import IDENTIFIER_PATTERN

COMPONENT_ID_PATTERN = r"^[A-Za-z_][A-Za-z0-9_]*$"


class Match(BaseModel):
    """
    A single attribute test, such as subject(doctor).

    Attributes:
        category: Attribute category to test
        value: Domain token the request must carry
    """

    category: AttrCategory
    value: str = Field(pattern=IDENTIFIER_PATTERN)

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return f"{self.category.value}({self.value})"


class AllOf(BaseModel):
    """Conjunction of matches."""

    matches: Tuple[Match, ...] = Field(min_length=1)

    model_config = ConfigDict(frozen=True)


class AnyOf(BaseModel):
    """Disjunction of AllOfs."""

    allofs: Tuple[AllOf, ...] = Field(min_length=1)

    model_config = ConfigDict(frozen=True)


class Target(BaseModel):
    """
    Conjunction of AnyOfs.

    The empty target is the null target, which matches every request.
    """

    anyofs: Tuple[AnyOf, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def is_null(self) -> bool:
        """Check whether this is the null target."""
        return not self.anyofs

    def matches(self) -> List[Match]:
        """Get every match of this target in pre-order."""
        return [
            match for anyof in self.anyofs for allof in anyof.allofs for match in allof.matches
        ]

    @classmethod
    def of(cls, *anyofs: List[List[Match]]) -> "Target":
        """
        Build a target from nested lists of matches.

        Examples:
            >>> Target.of([[Match(category=AttrCategory.SUBJECT, value="doctor")]])
        """
        return cls(
            anyofs=tuple(
                AnyOf(allofs=tuple(AllOf(matches=tuple(allof)) for allof in anyof))
                for anyof in anyofs
            )
        )


NULL_TARGET = Target()


class Rule(BaseModel):
    """
    A leaf of the policy tree.

    Attributes:
        id: Unique component identifier
        effect: Decision produced when the target matches and the condition holds
        target: Applicability test
        condition: Additional boolean test
    """

    id: str = Field(pattern=COMPONENT_ID_PATTERN)
    effect: Effect
    target: Target = NULL_TARGET
    condition: Condition = TRUE_CONDITION

    model_config = ConfigDict(frozen=True)

    @property
    def children(self) -> Tuple[str, ...]:
        """Rules have no children."""
        return ()

    @classmethod
    def builder(cls) -> "RuleBuilder":
        """Create a builder for fluent API construction."""
        return RuleBuilder()


class Policy(BaseModel):
    """
    A combination of rules.

    Attributes:
        id: Unique component identifier
        target: Applicability test
        children: Identifiers of the combined rules, in order
        algorithm: Combining algorithm applied to the children's decisions
    """

    id: str = Field(pattern=COMPONENT_ID_PATTERN)
    target: Target = NULL_TARGET
    children: Tuple[str, ...] = Field(min_length=1)
    algorithm: CombiningAlgorithm

    model_config = ConfigDict(frozen=True)

    @classmethod
    def builder(cls) -> "ContainerBuilder":
        """Create a builder for fluent API construction."""
        return ContainerBuilder(cls)


class PolicySet(BaseModel):
    """
    A combination of policies and policy sets.

    Attributes:
        id: Unique component identifier
        target: Applicability test
        children: Identifiers of the combined components, in order
        algorithm: Combining algorithm applied to the children's decisions
    """

    id: str = Field(pattern=COMPONENT_ID_PATTERN)
    target: Target = NULL_TARGET
    children: Tuple[str, ...] = Field(min_length=1)
    algorithm: CombiningAlgorithm

    model_config = ConfigDict(frozen=True)

    @classmethod
    def builder(cls) -> "ContainerBuilder":
        """Create a builder for fluent API construction."""
        return ContainerBuilder(cls)


Component = Union[Rule, Policy, PolicySet]
Container = Union[Policy, PolicySet]


class ParsedComponent(BaseModel):
    """
    A component together with where it was defined.

    Attributes:
        component: The parsed component
        span: Location of the definition, when parsed from text
    """

    component: Union[Rule, Policy, PolicySet]
    span: Optional[SourceSpan] = None

    model_config = ConfigDict(frozen=True)


class RuleBuilder:
    """
    Builder class for fluent Rule construction.

    Examples:
        >>> rule = (Rule.builder()
        ...     .id("r1")
        ...     .permit()
        ...     .match(AttrCategory.SUBJECT, "doctor")
        ...     .build())
    """

    def __init__(self) -> None:
        """Initialize builder with default values."""
        self._id: Optional[str] = None
        self._effect: Effect = Effect.PERMIT
        self._anyofs: List[List[List[Match]]] = []
        self._condition: Condition = TRUE_CONDITION

    def id(self, component_id: str) -> "RuleBuilder":
        """Set the rule identifier."""
        self._id = component_id
        return self

    def effect(self, effect: Effect) -> "RuleBuilder":
        """Set the effect."""
        self._effect = effect
        return self

    def permit(self) -> "RuleBuilder":
        """Set the effect to permit."""
        return self.effect(Effect.PERMIT)

    def deny(self) -> "RuleBuilder":
        """Set the effect to deny."""
        return self.effect(Effect.DENY)

    def match(self, category: AttrCategory, value: str) -> "RuleBuilder":
        """Add an AnyOf holding a single match."""
        self._anyofs.append([[Match(category=category, value=value)]])
        return self

    def any_of(self, *allofs: List[Match]) -> "RuleBuilder":
        """Add an AnyOf built from lists of matches."""
        self._anyofs.append([list(allof) for allof in allofs])
        return self

    def condition(self, condition: Condition) -> "RuleBuilder":
        """Set the condition."""
        self._condition = condition
        return self

    def build(self) -> Rule:
        """
        Build and return the Rule instance.

        Returns:
            Configured Rule instance.
        """
        return Rule(
            id=self._id,
            effect=self._effect,
            target=Target.of(*self._anyofs),
            condition=self._condition,
        )


class ContainerBuilder:
    """
    Builder class for fluent Policy and PolicySet construction.

    Examples:
        >>> policy = (Policy.builder()
        ...     .id("p1")
        ...     .children("r1", "r2")
        ...     .algorithm(CombiningAlgorithm.DENY_OVERRIDES)
        ...     .build())
    """

    def __init__(self, model: type) -> None:
        """Initialize builder for the given container model."""
        self._model = model
        self._id: Optional[str] = None
        self._anyofs: List[List[List[Match]]] = []
        self._children: List[str] = []
        self._algorithm: CombiningAlgorithm = CombiningAlgorithm.PERMIT_OVERRIDES

    def id(self, component_id: str) -> "ContainerBuilder":
        """Set the component identifier."""
        self._id = component_id
        return self

    def match(self, category: AttrCategory, value: str) -> "ContainerBuilder":
        """Add an AnyOf holding a single match."""
        self._anyofs.append([[Match(category=category, value=value)]])
        return self

    def any_of(self, *allofs: List[Match]) -> "ContainerBuilder":
        """Add an AnyOf built from lists of matches."""
        self._anyofs.append([list(allof) for allof in allofs])
        return self

    def children(self, *children: str) -> "ContainerBuilder":
        """Append child identifiers."""
        self._children.extend(children)
        return self

    def algorithm(self, algorithm: CombiningAlgorithm) -> "ContainerBuilder":
        """Set the combining algorithm."""
        self._algorithm = algorithm
        return self

    def build(self) -> Container:
        """
        Build and return the container instance.

        Returns:
            Configured Policy or PolicySet instance.
        """
        return self._model(
            id=self._id,
            target=Target.of(*self._anyofs),
            children=tuple(self._children),
            algorithm=self._algorithm,
        )
