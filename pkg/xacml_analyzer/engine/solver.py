"""
Solver for acyclic programs with choice rules and constraints.

Without choices the unique answer set is computed in one pass over the
rules ordered by head level. With choices every admissible selection of
choice elements is fixed as facts, solved the same way and kept when it
satisfies the cardinality bounds and every constraint.
"""

import itertools
import logging
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from xacml_analyzer.exception.exceptions import SolverPreconditionException
from xacml_analyzer.metrics.engine_metrics import EngineMetrics
from xacml_analyzer.engine.acyclicity import LevelMapping, check_acyclic
from xacml_analyzer.engine.ground_program import AnswerSet, GroundChoice, GroundProgram, GroundRule

logger = logging.getLogger(__name__)


class Solver:
    """
    Computes answer sets of one acyclic ground program.

    The level ordering is computed once; solving is then linear in the
    size of the program.
    """

    def __init__(self, program: GroundProgram, metrics: Optional[EngineMetrics] = None) -> None:
        """
        Prepare a program for solving.

        Raises:
            SolverPreconditionException: If the program is not acyclic
        """
        result = check_acyclic(program)
        if result.mapping is None:
            cycle = ", ".join(str(a) for a in result.cycle)
            raise SolverPreconditionException(
                f"program is not acyclic; cycle through {cycle}",
                context={"cycle": [str(a) for a in result.cycle]},
            )
        self._program = program
        self._metrics = metrics
        self.level_mapping: LevelMapping = result.mapping
        rules = [r for r in program.rules if r.head is not None]
        self._ordered: List[GroundRule] = sorted(
            rules, key=lambda r: self.level_mapping.level(r.head)
        )
        self._constraints = program.constraints

    @property
    def program(self) -> GroundProgram:
        return self._program

    def truth(self, facts: Iterable[int] = ()) -> bytearray:
        """
        Compute the unique model with the given atoms fixed true.

        Args:
            facts: Atom indices that hold regardless of the rules

        Returns:
            Truth flag per atom index
        """
        truth = bytearray(len(self._program.atoms))
        for atom_id in facts:
            truth[atom_id] = 1
        for ground_rule in self._ordered:
            if truth[ground_rule.head]:
                continue
            if all(truth[p] for p in ground_rule.positive) and not any(
                truth[n] for n in ground_rule.negative
            ):
                truth[ground_rule.head] = 1
        if self._metrics is not None:
            self._metrics.record_solve()
        return truth

    def violated(self, truth: bytearray) -> bool:
        """Check whether some constraint's body holds."""
        for ground_rule in self._constraints:
            if all(truth[p] for p in ground_rule.positive) and not any(
                truth[n] for n in ground_rule.negative
            ):
                return True
        return False

    def answer_set(self, truth: bytearray) -> AnswerSet:
        """Convert truth flags into an answer set."""
        return AnswerSet.of(self._program.atoms[i] for i, flag in enumerate(truth) if flag)

    def solve_unique(self, facts: Iterable[int] = ()) -> AnswerSet:
        """
        Compute the unique answer set.

        Raises:
            SolverPreconditionException: If the program has choice rules or
                constraints
        """
        if self._program.has_choices or self._program.has_constraints:
            raise SolverPreconditionException(
                "solve_unique needs a program without choice rules and constraints; "
                "use enumerate_models"
            )
        return self.answer_set(self.truth(facts))

    def selections(self) -> Iterator[Tuple[int, ...]]:
        """
        Iterate over candidate element selections.

        Groups vary in program order, the first slowest; within a group,
        subsets grow from the lower bound and follow element order.
        """
        per_group = [list(_subsets(group)) for group in self._program.choices]
        for combination in itertools.product(*per_group):
            yield tuple(atom_id for subset in combination for atom_id in subset)

    def iter_models(self) -> Iterator[AnswerSet]:
        """Iterate over the distinct answer sets in selection order."""
        seen = set()
        for selection in self.selections():
            truth = self.truth(selection)
            accepted = self._admissible(truth) and not self.violated(truth)
            if self._metrics is not None:
                self._metrics.record_candidate(accepted)
            if not accepted:
                continue
            key = bytes(truth)
            if key in seen:
                continue
            seen.add(key)
            yield self.answer_set(truth)

    def enumerate_models(self, limit: Optional[int] = None) -> List[AnswerSet]:
        """
        Collect answer sets in selection order.

        Args:
            limit: Stop after this many; None for all

        Returns:
            The answer sets found
        """
        return list(itertools.islice(self.iter_models(), limit))

    def _admissible(self, truth: bytearray) -> bool:
        for group in self._program.choices:
            count = sum(truth[e] for e in group.elements)
            if count < group.lower or (group.upper is not None and count > group.upper):
                return False
        return True


def _subsets(group: GroundChoice) -> Iterator[Tuple[int, ...]]:
    for size in range(group.lower, group.max_size + 1):
        yield from itertools.combinations(group.elements, size)


def solve_unique(program: GroundProgram, facts: Sequence[int] = ()) -> AnswerSet:
    """Compute the unique answer set of an acyclic program without choices or constraints."""
    return Solver(program).solve_unique(facts)


def enumerate_models(program: GroundProgram, limit: Optional[int] = None) -> List[AnswerSet]:
    """Enumerate the answer sets of an acyclic program with choices and constraints."""
    return Solver(program).enumerate_models(limit)
