"""
Bottom-up grounder.

Instantiates rules by joining their positive body literals against the
atoms that can possibly become true, starting from the facts. A rule is
re-joined only when one of the predicates it reads has gained atoms since
its last join. Comparisons are evaluated as soon as their variables are
bound and never reach the ground program; negated atoms that can never
become true are dropped.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from xacml_analyzer.exception.exceptions import GroundingException
from xacml_analyzer.lp.program import Atom, Comparison, LogicProgram, LPRule
from xacml_analyzer.metrics.engine_metrics import EngineMetrics
from xacml_analyzer.models.terms import Term, Value, Variable
from xacml_analyzer.engine.ground_program import GroundChoice, GroundProgram, GroundRule

logger = logging.getLogger(__name__)

Binding = Dict[Variable, Value]
_Key = Tuple  # (predicate, arity) or (predicate, arity, first argument)


class _AtomIndex:
    """Possible atoms, indexed by predicate/arity and by first argument."""

    def __init__(self) -> None:
        self._all: Dict[Tuple[str, int], List[Tuple[Value, ...]]] = defaultdict(list)
        self._by_first: Dict[Tuple[str, int, Value], List[Tuple[Value, ...]]] = defaultdict(list)
        self._members: Set[Atom] = set()
        self.stamps: Dict[_Key, int] = {}
        self.clock = 0

    def add(self, ground: Atom) -> bool:
        if ground in self._members:
            return False
        self._members.add(ground)
        self.clock += 1
        key = (ground.predicate, len(ground.args))
        self._all[key].append(ground.args)
        self.stamps[key] = self.clock
        if ground.args:
            first_key = key + (ground.args[0],)
            self._by_first[first_key].append(ground.args)
            self.stamps[first_key] = self.clock
        return True

    def __contains__(self, ground: Atom) -> bool:
        return ground in self._members

    def candidates(self, pattern: Atom, binding: Binding) -> Sequence[Tuple[Value, ...]]:
        key = (pattern.predicate, len(pattern.args))
        if pattern.args:
            first = pattern.args[0]
            if isinstance(first, Variable):
                first = binding.get(first, first)
            if not isinstance(first, Variable):
                return self._by_first.get(key + (first,), ())
        return self._all.get(key, ())


def _constants(program_rule: LPRule) -> Iterator[Value]:
    atoms = list(program_rule.positive) + list(program_rule.negative)
    if program_rule.head is not None:
        atoms.append(program_rule.head)
    if program_rule.choice is not None:
        atoms.append(program_rule.choice.element)
        atoms.extend(program_rule.choice.condition)
    terms: List[Term] = [arg for a in atoms for arg in a.args]
    terms.extend(t for c in program_rule.comparisons for t in (c.left, c.right))
    for term in terms:
        if not isinstance(term, Variable):
            yield term


def _read_key(pattern: Atom) -> _Key:
    key = (pattern.predicate, len(pattern.args))
    if pattern.args and not isinstance(pattern.args[0], Variable):
        return key + (pattern.args[0],)
    return key


def _unify(pattern: Atom, args: Tuple[Value, ...], binding: Binding) -> Optional[Binding]:
    extended: Optional[Binding] = None
    for term, value in zip(pattern.args, args):
        if isinstance(term, Variable):
            current = binding.get(term) if extended is None else extended.get(term)
            if current is None:
                if extended is None:
                    extended = dict(binding)
                extended[term] = value
            elif current != value:
                return None
        elif term != value:
            return None
    return binding if extended is None else extended


class _Plan:
    """Join order and comparison checkpoints for one rule body."""

    def __init__(self, literals: Sequence[Atom], comparisons: Sequence[Comparison]) -> None:
        self.literals = list(literals)
        self.checks: List[List[Comparison]] = [[] for _ in range(len(self.literals) + 1)]
        bound: Set[Variable] = set()
        placed: Set[int] = set()
        for depth in range(len(self.literals) + 1):
            for index, comparison in enumerate(comparisons):
                if index not in placed and comparison.variables() <= bound:
                    self.checks[depth].append(comparison)
                    placed.add(index)
            if depth < len(self.literals):
                bound |= self.literals[depth].variables()
        self.read_keys = {_read_key(literal) for literal in self.literals}
        self.last_join = -1

    def stale(self, index: _AtomIndex) -> bool:
        if self.last_join < 0:
            return True
        return any(index.stamps.get(key, 0) > self.last_join for key in self.read_keys)

    def bindings(self, index: _AtomIndex) -> Iterator[Binding]:
        yield from self._extend(0, {}, index)

    def _extend(self, depth: int, binding: Binding, index: _AtomIndex) -> Iterator[Binding]:
        if not all(comparison.holds(binding) for comparison in self.checks[depth]):
            return
        if depth == len(self.literals):
            yield binding
            return
        pattern = self.literals[depth]
        for args in index.candidates(pattern, binding):
            extended = _unify(pattern, args, binding)
            if extended is not None:
                yield from self._extend(depth + 1, extended, index)


class Grounder:
    """
    Grounds safe logic programs.

    Examples:
        >>> program = parse_program("q(X) :- p(X). p(a).")
        >>> print(Grounder().ground(program))
        p(a).
        q(a) :- p(a).
    """

    def __init__(self, metrics: Optional[EngineMetrics] = None) -> None:
        self._metrics = metrics

    def ground(self, program: LogicProgram) -> GroundProgram:
        """
        Instantiate every rule over the atoms that can become true.

        Args:
            program: Safe program

        Returns:
            The ground program

        Raises:
            ProgramSafetyException: If a rule is not range-restricted
            GroundingException: If a choice rule has a body, if it requires
                elements but has no instances, or if a rule has variables
                but the program names no constant to bind them to
        """
        program.check_safety()
        self._check_universe(program)
        index = _AtomIndex()
        normal = [r for r in program if r.head is not None]
        choices = [r for r in program if r.is_choice]
        constraints = [r for r in program if r.is_constraint]
        for choice_rule in choices:
            if choice_rule.body:
                raise GroundingException(
                    f"choice rules with a body are not supported: {choice_rule}"
                )

        plans = [_Plan(r.positive, r.comparisons) for r in normal]
        choice_plans = [_Plan(r.choice.condition, ()) for r in choices]
        instances: List[Tuple[Atom, Tuple[Atom, ...], Tuple[Atom, ...]]] = []
        seen: Set[Tuple[Atom, Tuple[Atom, ...], Tuple[Atom, ...]]] = set()
        elements: List[Dict[Atom, None]] = [{} for _ in choices]

        progress = True
        while progress:
            progress = False
            for program_rule, plan in zip(normal, plans):
                if not plan.stale(index):
                    continue
                progress = True
                plan.last_join = index.clock
                heads = []
                for binding in plan.bindings(index):
                    instance = (
                        program_rule.head.substitute(binding),
                        tuple(a.substitute(binding) for a in program_rule.positive),
                        tuple(a.substitute(binding) for a in program_rule.negative),
                    )
                    if instance not in seen:
                        seen.add(instance)
                        instances.append(instance)
                        heads.append(instance[0])
                for head in heads:
                    index.add(head)
            for program_rule, plan, group in zip(choices, choice_plans, elements):
                if not plan.stale(index):
                    continue
                progress = True
                plan.last_join = index.clock
                found = [program_rule.choice.element.substitute(b) for b in plan.bindings(index)]
                for element in found:
                    group.setdefault(element, None)
                    index.add(element)

        constraint_instances = []
        for program_rule in constraints:
            plan = _Plan(program_rule.positive, program_rule.comparisons)
            for binding in plan.bindings(index):
                constraint_instances.append(
                    (
                        None,
                        tuple(a.substitute(binding) for a in program_rule.positive),
                        tuple(a.substitute(binding) for a in program_rule.negative),
                    )
                )

        ground_program = self._intern(instances + constraint_instances, choices, elements, index)
        if self._metrics is not None:
            self._metrics.record_grounding(len(ground_program.rules), len(ground_program.atoms))
        logger.debug(
            "Grounded %d rules into %d ground rules over %d atoms",
            len(program),
            len(ground_program.rules),
            len(ground_program.atoms),
        )
        return ground_program

    def _check_universe(self, program: LogicProgram) -> None:
        if any(next(_constants(r), None) is not None for r in program):
            return
        for program_rule in program:
            if not program_rule.is_choice and program_rule.variables():
                names = ", ".join(sorted(v.name for v in program_rule.variables()))
                raise GroundingException(
                    f"no constants to instantiate {names} in: {program_rule}",
                    context={"rule": str(program_rule)},
                )

    def _intern(
        self,
        instances: List[Tuple[Optional[Atom], Tuple[Atom, ...], Tuple[Atom, ...]]],
        choices: List[LPRule],
        elements: List[Dict[Atom, None]],
        index: _AtomIndex,
    ) -> GroundProgram:
        table: Dict[Atom, int] = {}

        def intern(ground: Atom) -> int:
            if ground not in table:
                table[ground] = len(table)
            return table[ground]

        ground_choices = []
        for choice_rule, group in zip(choices, elements):
            head = choice_rule.choice
            if not group and head.lower > 0:
                raise GroundingException(
                    f"choice rule has no instances to choose from: {choice_rule}",
                    context={"rule": str(choice_rule)},
                )
            ordered = sorted(group, key=lambda a: a.sort_key())
            ground_choices.append(
                GroundChoice(
                    lower=head.lower,
                    upper=head.upper,
                    elements=tuple(intern(a) for a in ordered),
                    label=head.element.predicate,
                )
            )

        ground_rules = []
        for head, positive, negative in instances:
            head_id = intern(head) if head is not None else None
            ground_rules.append(
                GroundRule(
                    head=head_id,
                    positive=tuple(intern(a) for a in positive),
                    negative=tuple(intern(a) for a in negative if a in index),
                )
            )
        atoms = sorted(table, key=table.get)
        return GroundProgram(atoms, ground_rules, ground_choices)


def ground(program: LogicProgram, metrics: Optional[EngineMetrics] = None) -> GroundProgram:
    """Ground a program; see Grounder.ground."""
    return Grounder(metrics).ground(program)
