"""
Logic program representation.

Normal rules with negation as failure, comparisons between terms,
cardinality choice rules and integrity constraints. Values are immutable
so rules can be shared, hashed and deduplicated.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple, Union

from xacml_analyzer.exception.exceptions import ProgramSafetyException
from xacml_analyzer.models.terms import Term, Value, Variable, format_lp_term, value_sort_key

Binding = Mapping[Variable, Value]


def var(name: str) -> Variable:
    """Create a variable."""
    return Variable(name=name)


@dataclass(frozen=True)
class Atom:
    """
    A predicate applied to terms.

    Attributes:
        predicate: Predicate name
        args: Argument terms
    """

    predicate: str
    args: Tuple[Term, ...] = ()

    def variables(self) -> Set[Variable]:
        """Get the variables among the arguments."""
        return {arg for arg in self.args if isinstance(arg, Variable)}

    @property
    def is_ground(self) -> bool:
        """Check whether the atom has no variables."""
        return not any(isinstance(arg, Variable) for arg in self.args)

    def substitute(self, binding: Binding) -> "Atom":
        """Replace bound variables by their values."""
        return Atom(
            self.predicate,
            tuple(binding.get(arg, arg) if isinstance(arg, Variable) else arg for arg in self.args),
        )

    def sort_key(self) -> Tuple:
        """Order atoms by predicate, then arguments with integers before strings."""
        return (self.predicate, len(self.args)) + tuple(
            (2, arg.name) if isinstance(arg, Variable) else value_sort_key(arg)
            for arg in self.args
        )

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(format_lp_term(arg) for arg in self.args)})"


def atom(predicate: str, *args: Term) -> Atom:
    """Create an atom."""
    return Atom(predicate, tuple(args))


@dataclass(frozen=True)
class Literal:
    """An atom or its default negation in a rule body."""

    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else str(self.atom)


def pos(predicate: str, *args: Term) -> Literal:
    """Create a positive body literal."""
    return Literal(Atom(predicate, tuple(args)))


def neg(predicate: str, *args: Term) -> Literal:
    """Create a negative body literal."""
    return Literal(Atom(predicate, tuple(args)), negated=True)


class ComparisonOp(Enum):
    """Built-in comparison operators."""

    EQ = "="
    NEQ = "!="
    LT = "<"


@dataclass(frozen=True)
class Comparison:
    """
    A built-in comparison between two terms.

    Less-than orders integers before strings, each in natural order.
    """

    op: ComparisonOp
    left: Term
    right: Term

    def variables(self) -> Set[Variable]:
        """Get the variables of both sides."""
        return {term for term in (self.left, self.right) if isinstance(term, Variable)}

    def holds(self, binding: Binding) -> bool:
        """Evaluate the comparison once every variable is bound."""
        left = binding[self.left] if isinstance(self.left, Variable) else self.left
        right = binding[self.right] if isinstance(self.right, Variable) else self.right
        if self.op is ComparisonOp.EQ:
            return left == right
        if self.op is ComparisonOp.NEQ:
            return left != right
        return value_sort_key(left) < value_sort_key(right)

    def __str__(self) -> str:
        return f"{format_lp_term(self.left)} {self.op.value} {format_lp_term(self.right)}"


def neq(left: Term, right: Term) -> Comparison:
    """Create a disequality."""
    return Comparison(ComparisonOp.NEQ, left, right)


def eq(left: Term, right: Term) -> Comparison:
    """Create an equality."""
    return Comparison(ComparisonOp.EQ, left, right)


def lt(left: Term, right: Term) -> Comparison:
    """Create a less-than comparison."""
    return Comparison(ComparisonOp.LT, left, right)


BodyElement = Union[Literal, Comparison]


@dataclass(frozen=True)
class ChoiceHead:
    """
    A cardinality choice head: lower { element : condition } upper.

    Attributes:
        lower: Minimum number of chosen elements
        upper: Maximum number of chosen elements, or None for no maximum
        element: Atom whose instances may be chosen
        condition: Positive atoms generating the instances
    """

    lower: int
    upper: Optional[int]
    element: Atom
    condition: Tuple[Atom, ...] = ()

    def __str__(self) -> str:
        generator = ", ".join(str(a) for a in self.condition)
        inner = f"{self.element} : {generator}" if generator else str(self.element)
        upper = "" if self.upper is None else f" {self.upper}"
        return f"{self.lower} {{ {inner} }}{upper}"


@dataclass(frozen=True)
class LPRule:
    """
    A rule, fact, constraint or choice rule.

    A fact has a head and an empty body; a constraint has no head and a
    non-empty body; a choice rule has a choice head instead of an atom.

    Attributes:
        head: Head atom, or None for constraints and choice rules
        body: Body literals and comparisons, in written order
        choice: Choice head, for choice rules
    """

    head: Optional[Atom] = None
    body: Tuple[BodyElement, ...] = ()
    choice: Optional[ChoiceHead] = None

    @property
    def positive(self) -> Tuple[Atom, ...]:
        """Atoms of the positive body literals."""
        return tuple(e.atom for e in self.body if isinstance(e, Literal) and not e.negated)

    @property
    def negative(self) -> Tuple[Atom, ...]:
        """Atoms of the negative body literals."""
        return tuple(e.atom for e in self.body if isinstance(e, Literal) and e.negated)

    @property
    def comparisons(self) -> Tuple[Comparison, ...]:
        """Comparisons of the body."""
        return tuple(e for e in self.body if isinstance(e, Comparison))

    @property
    def is_fact(self) -> bool:
        """Check whether this is a fact."""
        return self.head is not None and not self.body

    @property
    def is_constraint(self) -> bool:
        """Check whether this is an integrity constraint."""
        return self.head is None and self.choice is None

    @property
    def is_choice(self) -> bool:
        """Check whether this is a choice rule."""
        return self.choice is not None

    def variables(self) -> Set[Variable]:
        """Get every variable of the rule."""
        found: Set[Variable] = set()
        if self.head is not None:
            found |= self.head.variables()
        if self.choice is not None:
            found |= self.choice.element.variables()
            for generator in self.choice.condition:
                found |= generator.variables()
        for element in self.body:
            if isinstance(element, Literal):
                found |= element.atom.variables()
            else:
                found |= element.variables()
        return found

    def check_safety(self) -> None:
        """
        Check that the rule is range-restricted.

        Raises:
            ProgramSafetyException: If a variable of the head, of a negative
                literal or of a comparison occurs in no positive literal
        """
        bound: Set[Variable] = set()
        for positive in self.positive:
            bound |= positive.variables()
        needed: Set[Variable] = set()
        if self.head is not None:
            needed |= self.head.variables()
        for negative in self.negative:
            needed |= negative.variables()
        for comparison in self.comparisons:
            needed |= comparison.variables()
        if self.choice is not None:
            local = set(bound)
            for generator in self.choice.condition:
                local |= generator.variables()
            unsafe_element = self.choice.element.variables() - local
            needed |= unsafe_element
        unsafe = needed - bound
        if unsafe:
            names = ", ".join(sorted(v.name for v in unsafe))
            raise ProgramSafetyException(
                f"unsafe variables {names} in rule: {self}", context={"rule": str(self)}
            )
        if self.head is None and self.choice is None and not self.body:
            raise ProgramSafetyException("a constraint needs a non-empty body")
        if self.choice is not None and (
            self.choice.lower < 0
            or (self.choice.upper is not None and self.choice.upper < self.choice.lower)
        ):
            raise ProgramSafetyException(f"invalid choice bounds in rule: {self}")

    def __str__(self) -> str:
        if self.choice is not None:
            head = str(self.choice)
        elif self.head is not None:
            head = str(self.head)
        else:
            head = ""
        if not self.body:
            return f"{head}."
        body = ", ".join(str(element) for element in self.body)
        return f"{head} :- {body}." if head else f":- {body}."


def fact(predicate: str, *args: Value) -> LPRule:
    """Create a fact."""
    return LPRule(head=Atom(predicate, tuple(args)))


def rule(head: Atom, *body: BodyElement) -> LPRule:
    """Create a normal rule."""
    return LPRule(head=head, body=tuple(body))


def constraint(*body: BodyElement) -> LPRule:
    """Create an integrity constraint."""
    return LPRule(body=tuple(body))


def choice(lower: int, upper: Optional[int], element: Atom, *condition: Atom) -> LPRule:
    """Create a choice rule with an empty body."""
    return LPRule(choice=ChoiceHead(lower, upper, element, tuple(condition)))


@dataclass
class LogicProgram:
    """
    An ordered collection of rules.

    Rule order is preserved; duplicates are dropped on insertion.
    """

    rules: List[LPRule] = field(default_factory=list)

    def __post_init__(self) -> None:
        rules, self.rules = self.rules, []
        self._seen: Set[LPRule] = set()
        self.extend(rules)

    def add(self, new_rule: LPRule) -> "LogicProgram":
        """Append a rule unless it is already present."""
        if new_rule not in self._seen:
            self._seen.add(new_rule)
            self.rules.append(new_rule)
        return self

    def extend(self, rules: Iterable[LPRule]) -> "LogicProgram":
        """Append several rules."""
        for new_rule in rules:
            self.add(new_rule)
        return self

    def check_safety(self) -> None:
        """Check every rule for range restriction."""
        for program_rule in self.rules:
            program_rule.check_safety()

    def facts(self) -> List[LPRule]:
        """Get the facts in order."""
        return [r for r in self.rules if r.is_fact]

    def predicates(self) -> Dict[str, int]:
        """Count the rules defining each head predicate."""
        counts: Dict[str, int] = {}
        for program_rule in self.rules:
            if program_rule.head is not None:
                counts[program_rule.head.predicate] = counts.get(program_rule.head.predicate, 0) + 1
        return counts

    def __add__(self, other: "LogicProgram") -> "LogicProgram":
        return LogicProgram(self.rules + other.rules)

    def __iter__(self) -> Iterator[LPRule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, item: object) -> bool:
        return item in self._seen

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)
