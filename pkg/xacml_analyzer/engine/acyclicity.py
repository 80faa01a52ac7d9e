"""
Acyclicity check for ground programs.

A program is acyclic when its atoms admit a level mapping: every rule's
head sits strictly above each of its body atoms, positive or negated.
Acyclic normal programs have exactly one answer set.
"""

import logging
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Dict, List, Optional, Set, Tuple

from xacml_analyzer.lp.program import Atom
from xacml_analyzer.engine.ground_program import GroundProgram

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelMapping:
    """
    Levels of the atoms of one ground program.

    Atoms no rule depends upon through a body sit at level 1; every other
    atom is one above the highest atom it depends on.

    Attributes:
        levels: Level per atom index
    """

    levels: Tuple[int, ...]

    def level(self, atom_id: int) -> int:
        """Get the level of an atom."""
        return self.levels[atom_id]

    def verify(self, program: GroundProgram) -> bool:
        """Check that every rule's head sits above its body atoms."""
        for ground_rule in program.rules:
            if ground_rule.head is None:
                continue
            head_level = self.levels[ground_rule.head]
            body = ground_rule.positive + ground_rule.negative
            if any(self.levels[b] >= head_level for b in body):
                return False
        return True

    def by_atom(self, program: GroundProgram) -> Dict[Atom, int]:
        """Get the mapping keyed by atom."""
        return {program.atom(i): level for i, level in enumerate(self.levels)}


@dataclass(frozen=True)
class AcyclicityResult:
    """
    Outcome of the acyclicity check.

    Attributes:
        mapping: A witness level mapping, when the program is acyclic
        cycle: Atoms of one dependency cycle, when it is not
    """

    mapping: Optional[LevelMapping] = None
    cycle: Tuple[Atom, ...] = field(default_factory=tuple)

    @property
    def is_acyclic(self) -> bool:
        return self.mapping is not None


def check_acyclic(program: GroundProgram) -> AcyclicityResult:
    """
    Compute a level mapping or report a dependency cycle.

    Levels are longest-path layers of the dependency graph with edges from
    each head to all of its body atoms.

    Args:
        program: Ground program to check

    Returns:
        The mapping, or the atoms of a cycle

    Examples:
        >>> check_acyclic(ground(parse_program("a :- not b. b :- not a."))).cycle
        (Atom(predicate='a', args=()), Atom(predicate='b', args=()))
    """
    dependencies: Dict[int, Set[int]] = {i: set() for i in range(len(program.atoms))}
    for ground_rule in program.rules:
        if ground_rule.head is not None:
            dependencies[ground_rule.head].update(ground_rule.positive)
            dependencies[ground_rule.head].update(ground_rule.negative)
    try:
        order = list(TopologicalSorter(dependencies).static_order())
    except CycleError as error:
        cycle_ids: List[int] = list(dict.fromkeys(error.args[1]))
        cycle = tuple(sorted((program.atom(i) for i in cycle_ids), key=lambda a: a.sort_key()))
        logger.debug("Dependency cycle through %s", ", ".join(str(a) for a in cycle))
        return AcyclicityResult(cycle=cycle)
    levels = [1] * len(program.atoms)
    for atom_id in order:
        below = dependencies[atom_id]
        if below:
            levels[atom_id] = 1 + max(levels[b] for b in below)
    return AcyclicityResult(mapping=LevelMapping(tuple(levels)))
