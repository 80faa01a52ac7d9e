"""
Enumerations used throughout the XACML analyzer.

This module defines the attribute categories, effects, combining algorithms,
the three truth domains of the evaluation semantics and the enum types used
for configuration and reporting.
"""

from enum import Enum
from typing import List


class AttrCategory(Enum):
    """
    Enumeration of the four XACML attribute categories.

    The canonical order (subject, action, resource, environment) is used for
    request enumeration, witness ordering and emitted choice rules.
    """

    SUBJECT = "subject"
    """Who is requesting access"""

    ACTION = "action"
    """What the subject wants to do"""

    RESOURCE = "resource"
    """What the action is performed on"""

    ENVIRONMENT = "environment"
    """Contextual attributes such as time of day"""

    @property
    def section(self) -> str:
        """Section keyword used for this category in attribute-domain files."""
        return f"{self.value}s"

    @property
    def domain_predicate(self) -> str:
        """Predicate holding this category's domain values in logic programs."""
        return f"{self.value}_db"

    @classmethod
    def ordered(cls) -> List["AttrCategory"]:
        """Get the categories in canonical order."""
        return [cls.SUBJECT, cls.ACTION, cls.RESOURCE, cls.ENVIRONMENT]

    @classmethod
    def from_name(cls, name: str) -> "AttrCategory":
        """Look up a category by its singular name."""
        return cls(name)

    @classmethod
    def names(cls) -> List[str]:
        """Get the singular names of all categories."""
        return [category.value for category in cls.ordered()]


class Effect(Enum):
    """Effect of a rule whose target matches and whose condition holds."""

    PERMIT = "permit"
    """Grant access"""

    DENY = "deny"
    """Refuse access"""

    def to_decision(self) -> "Decision":
        """Get the decision produced by this effect."""
        return Decision.PERMIT if self is Effect.PERMIT else Decision.DENY


class CombiningAlgorithm(Enum):
    """
    Enumeration of the supported combining algorithms.

    Values are the keywords used in policy files and in logic programs.
    """

    PERMIT_OVERRIDES = "po"
    """Any permit wins, otherwise any deny, otherwise not applicable"""

    DENY_OVERRIDES = "do"
    """Any deny wins, otherwise any permit, otherwise not applicable"""

    FIRST_APPLICABLE = "fa"
    """The first child that is not not-applicable decides"""

    ONLY_ONE_APPLICABLE = "ooa"
    """Exactly one applicable child decides, otherwise not applicable"""


class MatchValue(Enum):
    """Truth domain for matches, AllOfs, AnyOfs and targets."""

    MATCH = "m"
    """The request satisfies the element"""

    NO_MATCH = "nm"
    """The request does not satisfy the element"""


class CondValue(Enum):
    """Truth domain for conditions."""

    TRUE = "t"
    """The condition holds"""

    FALSE = "f"
    """The condition does not hold"""


class Decision(Enum):
    """
    Truth domain for rules, policies and policy sets.

    The value is the logic-program constant; display_name is the
    user-facing spelling.
    """

    PERMIT = "p"
    """Access is granted"""

    DENY = "d"
    """Access is refused"""

    NOT_APPLICABLE = "na"
    """No rule applies to the request"""

    @property
    def display_name(self) -> str:
        """Get the user-facing name of this decision."""
        names = {
            Decision.PERMIT: "permit",
            Decision.DENY: "deny",
            Decision.NOT_APPLICABLE: "not_applicable",
        }
        return names[self]

    @classmethod
    def from_display_name(cls, name: str) -> "Decision":
        """Look up a decision by its user-facing name."""
        for decision in cls:
            if decision.display_name == name:
                return decision
        raise ValueError(f"Unknown decision: {name}")


class Engine(Enum):
    """Evaluation engine selection."""

    NATIVE = "native"
    """Direct evaluation of the denotational semantics"""

    LP = "lp"
    """Logic-program transformation solved by the built-in engine"""

    BOTH = "both"
    """Run both engines and require identical results"""


class AnalysisTask(Enum):
    """Property analyses offered over a request space."""

    GAP = "gap"
    """Requests for which the root is not applicable"""

    CONFLICT = "conflict"
    """Requests for which a permit rule and a deny rule both apply"""

    REACHABILITY = "reachability"
    """Rules that never influence the root decision"""


class ProgramTask(Enum):
    """Logic programs the emitter can produce."""

    EVAL = "eval"
    """Policy transformation plus request facts"""

    GAP = "gap"
    """Completeness analysis program"""

    CONFLICT = "conflict"
    """Conflict analysis program"""

    REACHABILITY = "reachability"
    """Saturated reachability analysis program"""


class WitnessKind(Enum):
    """Kind of finding carried by a witness."""

    GAP = "gap"
    CONFLICT = "conflict"
    UNREACHABLE = "unreachable"


class ReachabilityMode(Enum):
    """
    How rule reachability is decided.

    Also used as the provenance of unreachable witnesses.
    """

    PER_REQUEST = "per_request"
    """Quantify over every request of the generate-one space"""

    SATURATED = "saturated"
    """Evaluate a single request carrying every domain value"""

    BOTH = "both"
    """Report findings of both modes"""


class UnreachableReason(Enum):
    """Why a rule was classified as unreachable."""

    ALWAYS_NA = "always_na"
    """The rule itself is never applicable"""

    PO_SHADOWED = "po_shadowed"
    """A deny rule under permit-overrides is overridden by a permit"""

    DO_SHADOWED = "do_shadowed"
    """A permit rule under deny-overrides is overridden by a deny"""

    OOA_SHADOWED = "ooa_shadowed"
    """An applicable rule under only-one-applicable has applicable siblings"""

    FA_SHADOWED = "fa_shadowed"
    """An earlier sibling under first-applicable always decides first"""

    @classmethod
    def shadowed_by(cls, algorithm: CombiningAlgorithm) -> "UnreachableReason":
        """Get the shadowing reason for a parent's combining algorithm."""
        return cls(f"{algorithm.value}_shadowed")


class OutputFormat(Enum):
    """Output formats for reports."""

    TEXT = "text"
    JSON = "json"
