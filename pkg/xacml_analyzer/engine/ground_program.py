"""
Ground programs and answer sets.

Ground atoms are interned: rules refer to atoms by their index in the
program's atom table.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from xacml_analyzer.lp.program import Atom


@dataclass(frozen=True)
class GroundRule:
    """
    A variable-free rule over interned atoms.

    Attributes:
        head: Head atom index, or None for a constraint
        positive: Indices of positive body atoms
        negative: Indices of negated body atoms
    """

    head: Optional[int]
    positive: Tuple[int, ...] = ()
    negative: Tuple[int, ...] = ()

    @property
    def is_constraint(self) -> bool:
        return self.head is None


@dataclass(frozen=True)
class GroundChoice:
    """
    A ground cardinality choice: between lower and upper of the elements hold.

    Attributes:
        lower: Minimum number of true elements
        upper: Maximum number of true elements, or None for no maximum
        elements: Element atom indices in canonical atom order
        label: Predicate of the elements, for diagnostics
    """

    lower: int
    upper: Optional[int]
    elements: Tuple[int, ...]
    label: str

    @property
    def max_size(self) -> int:
        """Effective upper bound."""
        return len(self.elements) if self.upper is None else min(self.upper, len(self.elements))


class GroundProgram:
    """
    A grounded logic program.

    Attributes:
        atoms: Atom table; an atom's index is its identifier
        rules: Ground rules and constraints in grounding order
        choices: Ground choice groups in program order
    """

    def __init__(
        self,
        atoms: Sequence[Atom],
        rules: Sequence[GroundRule],
        choices: Sequence[GroundChoice] = (),
    ) -> None:
        self.atoms: List[Atom] = list(atoms)
        self.rules: List[GroundRule] = list(rules)
        self.choices: List[GroundChoice] = list(choices)
        self._index: Dict[Atom, int] = {a: i for i, a in enumerate(self.atoms)}

    def atom_id(self, ground_atom: Atom) -> Optional[int]:
        """Get the index of an atom, or None if grounding never produced it."""
        return self._index.get(ground_atom)

    def atom(self, atom_id: int) -> Atom:
        """Get an atom by index."""
        return self.atoms[atom_id]

    @property
    def constraints(self) -> List[GroundRule]:
        """The integrity constraints."""
        return [r for r in self.rules if r.head is None]

    @property
    def has_choices(self) -> bool:
        return bool(self.choices)

    @property
    def has_constraints(self) -> bool:
        return any(r.head is None for r in self.rules)

    def without_choices(self) -> "GroundProgram":
        """Copy without choice groups; element atoms stay in the table."""
        return GroundProgram(self.atoms, self.rules, ())

    def without_constraints(self) -> "GroundProgram":
        """Copy without integrity constraints."""
        rules = [r for r in self.rules if r.head is not None]
        return GroundProgram(self.atoms, rules, self.choices)

    def format_rule(self, ground_rule: GroundRule) -> str:
        """Render a ground rule in ASP syntax."""
        body = [str(self.atoms[i]) for i in ground_rule.positive]
        body += [f"not {self.atoms[i]}" for i in ground_rule.negative]
        head = "" if ground_rule.head is None else str(self.atoms[ground_rule.head])
        if not body:
            return f"{head}." if head else ":- ."
        return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        lines = []
        for group in self.choices:
            elements = "; ".join(str(self.atoms[i]) for i in group.elements)
            upper = "" if group.upper is None else f" {group.upper}"
            lines.append(f"{group.lower} {{ {elements} }}{upper}.")
        lines.extend(self.format_rule(r) for r in self.rules)
        return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class AnswerSet:
    """
    The set of atoms true in a model.

    Attributes:
        atoms: True ground atoms
    """

    atoms: FrozenSet[Atom]

    @classmethod
    def of(cls, atoms: Iterable[Atom]) -> "AnswerSet":
        return cls(frozenset(atoms))

    def with_predicate(self, predicate: str, arity: Optional[int] = None) -> List[Atom]:
        """Get the true atoms of a predicate in canonical order."""
        found = [
            a
            for a in self.atoms
            if a.predicate == predicate and (arity is None or len(a.args) == arity)
        ]
        return sorted(found, key=lambda a: a.sort_key())

    def __contains__(self, item: object) -> bool:
        return item in self.atoms

    def __iter__(self) -> Iterator[Atom]:
        return iter(sorted(self.atoms, key=lambda a: a.sort_key()))

    def __len__(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return " ".join(str(a) for a in self)
