"""
Transformation of policy stores into logic programs.

Every component X is compiled into rules deriving val(X, V) for exactly
the value V the component takes under the request supplied as facts.
Internal identifiers for matches, AllOfs, AnyOfs, targets and conditions
are numbered in pre-order, so the same store always yields the same
program.

Analysis programs add domain facts, a request generator and a property
encoded as a constraint: every answer set of the gap program is a request
on which the root is not applicable, and so on.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set

from xacml_analyzer.exception.exceptions import EmptyDomainException
from xacml_analyzer.models.condition import (
    AndExpr,
    ComparisonLeaf,
    ComparisonOperator,
    Condition,
    ConditionExpr,
    NotExpr,
    OrExpr,
    PredicateLeaf,
    variables_of,
)
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import (
    AttrCategory,
    CombiningAlgorithm,
    CondValue,
    Decision,
    MatchValue,
    ProgramTask,
)
from xacml_analyzer.models.policy import Component, Match, Rule, Target
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore
from xacml_analyzer.models.terms import Variable, value_sort_key
from xacml_analyzer.lp.program import (
    Atom,
    BodyElement,
    Comparison,
    ComparisonOp,
    Literal,
    LogicProgram,
    LPRule,
    atom,
    choice,
    constraint,
    fact,
    lt,
    neg,
    neq,
    pos,
    rule,
    var,
)

logger = logging.getLogger(__name__)

NULL_TARGET_ID = "null"
TRUE_CONDITION_ID = "cond_true"

M = MatchValue.MATCH.value
NM = MatchValue.NO_MATCH.value
T = CondValue.TRUE.value
F = CondValue.FALSE.value
P = Decision.PERMIT.value
D = Decision.DENY.value
NA = Decision.NOT_APPLICABLE.value

_P, _R, _R1, _R2, _E, _E2, _I, _J, _V, _X, _Y, _C = (
    var(name) for name in ("P", "R", "R1", "R2", "E", "E2", "I", "J", "V", "X", "Y", "C")
)


def _algo(algorithm: CombiningAlgorithm, *args) -> Atom:
    return atom("algo", algorithm.value, *args)


def _comb(algorithm: CombiningAlgorithm) -> Literal:
    return pos("comb", _P, algorithm.value)


def _overrides_rules(algorithm: CombiningAlgorithm, strong: str, weak: str) -> List[LPRule]:
    """Rules in which decision `strong` overrides decision `weak`."""
    return [
        rule(_algo(algorithm, _P, strong), _comb(algorithm), pos("dec", _P, _R, strong)),
        rule(
            _algo(algorithm, _P, weak),
            _comb(algorithm),
            Literal(_algo(algorithm, _P, strong), negated=True),
            pos("dec", _P, _R, weak),
        ),
        rule(
            _algo(algorithm, _P, NA),
            _comb(algorithm),
            Literal(_algo(algorithm, _P, strong), negated=True),
            Literal(_algo(algorithm, _P, weak), negated=True),
        ),
    ]


def transform_combining(algorithm: CombiningAlgorithm) -> List[LPRule]:
    """
    Rules computing algo(alg, P, E) from the dec facts of a container P.

    Every rule is guarded by comb(P, alg), which the container emits, so
    the program is safe and only applies to containers using the
    algorithm. First-applicable uses the 1-based child index of dec/4:
    child I decides unless some earlier applicable child blocks it.

    Args:
        algorithm: Combining algorithm to encode

    Returns:
        The algorithm's rules
    """
    if algorithm is CombiningAlgorithm.PERMIT_OVERRIDES:
        return _overrides_rules(algorithm, P, D)
    if algorithm is CombiningAlgorithm.DENY_OVERRIDES:
        return _overrides_rules(algorithm, D, P)
    if algorithm is CombiningAlgorithm.FIRST_APPLICABLE:
        return [
            rule(
                _algo(algorithm, _P, _E),
                _comb(algorithm),
                pos("dec", _P, _R, _E, _I),
                neq(_E, NA),
                neg("blocked", _P, _I),
            ),
            rule(
                atom("blocked", _P, _I),
                _comb(algorithm),
                pos("dec", _P, _R, _E, _J),
                pos("dec", _P, _R2, _E2, _I),
                neq(_E, NA),
                lt(_J, _I),
            ),
        ]
    return [
        rule(
            atom("not_one_applicable", _P),
            _comb(algorithm),
            pos("dec", _P, _R1, _X),
            pos("dec", _P, _R2, _Y),
            neq(_R1, _R2),
            neq(_X, NA),
            neq(_Y, NA),
        ),
        rule(
            _algo(algorithm, _P, _E),
            _comb(algorithm),
            pos("dec", _P, _R, _E),
            neq(_E, NA),
            neg("not_one_applicable", _P),
        ),
        rule(_algo(algorithm, _P, NA), _comb(algorithm), pos("not_one_applicable", _P)),
    ]


LITERAL_DENY_OVERRIDES_RULES: List[LPRule] = [
    rule(
        _algo(CombiningAlgorithm.PERMIT_OVERRIDES, _P, D),
        pos("comb", _P, "do"),
        pos("dec", _P, _R, D),
    ),
    rule(
        _algo(CombiningAlgorithm.PERMIT_OVERRIDES, _P, P),
        pos("comb", _P, "do"),
        Literal(_algo(CombiningAlgorithm.PERMIT_OVERRIDES, _P, D), negated=True),
        pos("dec", _P, _R, P),
    ),
    rule(
        _algo(CombiningAlgorithm.PERMIT_OVERRIDES, _P, NA),
        pos("comb", _P, "do"),
        Literal(_algo(CombiningAlgorithm.PERMIT_OVERRIDES, _P, D), negated=True),
        Literal(_algo(CombiningAlgorithm.PERMIT_OVERRIDES, _P, D), negated=True),
    ),
]
"""Deny-overrides as it is commonly misprinted: over algo(po, ...) with a repeated literal.

Only useful to demonstrate that the differential check catches a wrong
encoding; it is never emitted by default.
"""


class ProgramEmitter:
    """
    Compiles one store into its logic program.

    Each instance numbers fresh identifiers from 1, skipping any that
    collide with a component identifier.
    """

    def __init__(
        self,
        store: PolicyStore,
        domains: AttributeDomains,
        combining_overrides: Optional[Mapping[CombiningAlgorithm, Sequence[LPRule]]] = None,
    ) -> None:
        self._store = store
        self._domains = domains
        self._overrides = dict(combining_overrides or {})
        self._taken: Set[str] = set(store.ids())
        self._counters: Dict[str, int] = defaultdict(int)
        self._aux_counters: Dict[str, int] = defaultdict(int)
        self._shared = LogicProgram()
        self._body = LogicProgram()
        self._needs_const = False

    def _fresh(self, prefix: str) -> str:
        while True:
            self._counters[prefix] += 1
            candidate = f"{prefix}_{self._counters[prefix]}"
            if candidate not in self._taken:
                self._taken.add(candidate)
                return candidate

    # ==================== Targets ====================

    def transform_match(self, match: Match) -> str:
        """Emit val(M, m) when the request carries the value, val(M, nm) otherwise."""
        match_id = self._fresh("match")
        request_atom = atom(match.category.value, match.value)
        self._body.add(rule(atom("val", match_id, M), Literal(request_atom)))
        self._body.add(rule(atom("val", match_id, NM), Literal(request_atom, negated=True)))
        return match_id

    def transform_target(self, target: Target) -> str:
        """Emit the rules of a target and return the identifier carrying its value."""
        if target.is_null:
            self._shared.add(fact("val", NULL_TARGET_ID, M))
            return NULL_TARGET_ID
        anyof_ids = []
        for anyof in target.anyofs:
            allof_ids = []
            for allof in anyof.allofs:
                match_ids = [self.transform_match(match) for match in allof.matches]
                allof_id = self._fresh("allof")
                self._conjunction(allof_id, match_ids, M, NM)
                allof_ids.append(allof_id)
            anyof_id = self._fresh("anyof")
            self._disjunction(anyof_id, allof_ids, M, NM)
            anyof_ids.append(anyof_id)
        target_id = self._fresh("target")
        self._conjunction(target_id, anyof_ids, M, NM)
        return target_id

    def _conjunction(self, head_id: str, parts: List[str], true: str, false: str) -> None:
        self._body.add(rule(atom("val", head_id, true), *(pos("val", p, true) for p in parts)))
        for part in parts:
            self._body.add(rule(atom("val", head_id, false), pos("val", part, false)))

    def _disjunction(self, head_id: str, parts: List[str], true: str, false: str) -> None:
        for part in parts:
            self._body.add(rule(atom("val", head_id, true), pos("val", part, true)))
        self._body.add(rule(atom("val", head_id, false), *(pos("val", p, false) for p in parts)))

    # ==================== Conditions ====================

    def transform_condition(self, condition: Condition) -> str:
        """
        Emit the rules of a condition and return the identifier carrying its value.

        eval(C, t) holds when some assignment satisfies the expression;
        eval(C, f) is its complement. Disjunctions and negated compound
        expressions get auxiliary holds_C_k predicates over their free
        variables. Variables that no positive literal binds range over
        const/1.
        """
        if condition.expr is None:
            self._shared.add(fact("val", TRUE_CONDITION_ID, T))
            return TRUE_CONDITION_ID
        cond_id = self._fresh("cond")
        body = self._compile(condition.expr, cond_id)
        self._body.add(fact("condition", cond_id))
        self._body.add(self._guarded(atom("eval", cond_id, T), body))
        self._shared.add(rule(atom("eval", _C, F), pos("condition", _C), neg("eval", _C, T)))
        self._shared.add(rule(atom("val", _C, _V), pos("eval", _C, _V)))
        return cond_id

    def _compile(self, expr: ConditionExpr, cond_id: str) -> List[BodyElement]:
        if isinstance(expr, PredicateLeaf):
            return [pos(expr.name, *expr.args)]
        if isinstance(expr, ComparisonLeaf):
            op = ComparisonOp.EQ if expr.op is ComparisonOperator.EQ else ComparisonOp.NEQ
            return [Comparison(op, expr.left, expr.right)]
        if isinstance(expr, AndExpr):
            return [e for operand in expr.operands for e in self._compile(operand, cond_id)]
        if isinstance(expr, OrExpr):
            head = self._auxiliary(cond_id, expr)
            for operand in expr.operands:
                self._body.add(self._guarded(head, self._compile(operand, cond_id)))
            return [Literal(head)]
        operand = expr.operand
        if isinstance(operand, PredicateLeaf):
            return [neg(operand.name, *operand.args)]
        head = self._auxiliary(cond_id, operand)
        self._body.add(self._guarded(head, self._compile(operand, cond_id)))
        return [Literal(head, negated=True)]

    def _auxiliary(self, cond_id: str, expr: ConditionExpr) -> Atom:
        self._aux_counters[cond_id] += 1
        return Atom(f"holds_{cond_id}_{self._aux_counters[cond_id]}", tuple(variables_of(expr)))

    def _guarded(self, head: Atom, body: List[BodyElement]) -> LPRule:
        """Order a body as positives, const guards, comparisons, negatives."""
        positives = [e for e in body if isinstance(e, Literal) and not e.negated]
        negatives = [e for e in body if isinstance(e, Literal) and e.negated]
        comparisons = [e for e in body if isinstance(e, Comparison)]
        bound: Set[Variable] = set()
        for literal in positives:
            bound |= literal.atom.variables()
        needed: List[Variable] = []
        terms = list(head.args)
        for element in comparisons:
            terms.extend((element.left, element.right))
        for literal in negatives:
            terms.extend(literal.atom.args)
        for term in terms:
            if isinstance(term, Variable) and term not in bound and term not in needed:
                needed.append(term)
        if needed:
            self._needs_const = True
        guards = [pos("const", variable) for variable in needed]
        return rule(head, *positives, *guards, *comparisons, *negatives)

    # ==================== Components ====================

    def transform_rule(self, policy_rule: Rule) -> None:
        """Emit the three val rules of a rule."""
        target_id = self.transform_target(policy_rule.target)
        cond_id = self.transform_condition(policy_rule.condition)
        effect = policy_rule.effect.to_decision().value
        rid = policy_rule.id
        target_m, cond_t = pos("val", target_id, M), pos("val", cond_id, T)
        self._body.add(rule(atom("val", rid, effect), target_m, cond_t))
        self._body.add(rule(atom("val", rid, NA), pos("val", target_id, M), pos("val", cond_id, F)))
        self._body.add(rule(atom("val", policy_rule.id, NA), pos("val", target_id, NM)))

    def transform_container(self, container: Component) -> None:
        """Emit the dec bridges and val rules of a policy or policy set."""
        target_id = self.transform_target(container.target)
        cid = container.id
        for index, child in enumerate(container.children, start=1):
            self._body.add(rule(atom("dec", cid, child, _E), pos("val", child, _E)))
            self._body.add(rule(atom("dec", cid, child, _E, index), pos("val", child, _E)))
        self._body.add(fact("comb", cid, container.algorithm.value))
        self._body.add(rule(atom("val", cid, NA), pos("val", target_id, NM)))
        self._body.add(rule(atom("val", cid, NA), *(pos("val", c, NA) for c in container.children)))
        self._body.add(
            rule(
                atom("val", cid, _E),
                pos("val", target_id, M),
                pos("dec", cid, _R, _V),
                neq(_V, NA),
                Literal(_algo(container.algorithm, cid, _E)),
            )
        )

    def transform(self) -> LogicProgram:
        """Compile the whole store."""
        for component in self._store:
            if isinstance(component, Rule):
                self.transform_rule(component)
            else:
                self.transform_container(component)
        program = LogicProgram()
        for name, rows in self._domains.relations.items():
            program.extend(fact(name, *row) for row in rows)
        if self._needs_const:
            program.extend(fact("const", value) for value in self._domains.universe())
        program.extend(self._shared)
        program.extend(self._body)
        used = [c.algorithm for c in self._store.containers()]
        for algorithm in CombiningAlgorithm:
            if algorithm in used:
                program.extend(self._overrides.get(algorithm) or transform_combining(algorithm))
        program.check_safety()
        logger.debug("Emitted %d rules for store %s", len(program), self._store.root_id)
        return program


def transform_store(
    store: PolicyStore,
    domains: AttributeDomains,
    combining_overrides: Optional[Mapping[CombiningAlgorithm, Sequence[LPRule]]] = None,
) -> LogicProgram:
    """
    Compile a store into a logic program.

    Args:
        store: Well-formed store
        domains: Relations used by conditions and the constant universe
        combining_overrides: Replacement rules for combining algorithms

    Returns:
        Rules deriving val(X, V) for every component X

    Examples:
        >>> print(transform_store(store, domains))
        val(null, m).
        ...
    """
    return ProgramEmitter(store, domains, combining_overrides).transform()


def transform_request(request: Request, domains: Optional[AttributeDomains] = None) -> LogicProgram:
    """
    Encode a request as facts.

    Values the domains do not mention are also added to const/1 so that
    condition variables can range over them.
    """
    program = LogicProgram(fact(f.predicate, *f.args) for f in request.sorted_facts())
    known = set(domains.universe()) if domains is not None else set()
    extra = {arg for f in request.facts for arg in f.args} - known
    program.extend(fact("const", value) for value in sorted(extra, key=value_sort_key))
    return program


def domain_facts(domains: AttributeDomains) -> List[LPRule]:
    """Facts subject_db(v), action_db(v), ... for every declared value."""
    return [
        fact(category.domain_predicate, token)
        for category in AttrCategory.ordered()
        for token in domains.tokens(category)
    ]


def generate_one(
    domains: AttributeDomains, referenced: Iterable[AttrCategory] = ()
) -> List[LPRule]:
    """
    Choice rules selecting exactly one value per non-empty category.

    Raises:
        EmptyDomainException: If a referenced category has no values
    """
    referenced = set(referenced)
    rules = []
    for category in AttrCategory.ordered():
        if not domains.size(category):
            if category in referenced:
                raise EmptyDomainException(
                    f"category '{category.value}' is used by the policies but its domain is empty",
                    context={"category": category.value},
                )
            logger.warning("Skipping empty %s domain", category.value)
            continue
        rules.append(choice(1, 1, atom(category.value, _X), atom(category.domain_predicate, _X)))
    return rules


def generate_all() -> List[LPRule]:
    """Rules putting every declared value of every category into the request."""
    return [
        rule(atom(category.value, _X), pos(category.domain_predicate, _X))
        for category in AttrCategory.ordered()
    ]


def _rule_facts(store: PolicyStore) -> List[LPRule]:
    return [fact("rule", rule_id) for rule_id in store.rule_ids()]


def gap_property(store: PolicyStore) -> List[LPRule]:
    """gap holds when the root is not applicable; models must contain gap."""
    return [rule(atom("gap"), pos("val", store.root_id, NA)), constraint(neg("gap"))]


def conflict_property() -> List[LPRule]:
    """conflict_pair(R1, R2) for a permitting and a denying rule; models must contain conflict."""
    return [
        rule(
            atom("conflict_pair", _R1, _R2),
            pos("rule", _R1),
            pos("rule", _R2),
            pos("val", _R1, P),
            pos("val", _R2, D),
            neq(_R1, _R2),
        ),
        rule(atom("conflict"), pos("conflict_pair", _R1, _R2)),
        constraint(neg("conflict")),
    ]


def reachability_property() -> List[LPRule]:
    """
    not_reachable(R) for every rule that is never applicable or is shadowed.

    Shadowing follows the parent's algorithm: a deny rule under a permitting
    permit-overrides parent, a permit rule under a denying deny-overrides
    parent, an applicable rule under a not-applicable only-one-applicable
    parent and any applicable rule after an earlier applicable sibling
    under first-applicable.
    """
    po = CombiningAlgorithm.PERMIT_OVERRIDES.value
    do = CombiningAlgorithm.DENY_OVERRIDES.value
    fa = CombiningAlgorithm.FIRST_APPLICABLE.value
    ooa = CombiningAlgorithm.ONLY_ONE_APPLICABLE.value
    return [
        rule(atom("reachable", _R), pos("rule", _R), pos("val", _R, _E), neq(_E, NA)),
        rule(atom("not_reachable", _R), pos("rule", _R), neg("reachable", _R)),
        rule(
            atom("not_reachable", _R),
            pos("rule", _R),
            pos("comb", _P, po),
            pos("val", _P, P),
            pos("dec", _P, _R, D),
        ),
        rule(
            atom("not_reachable", _R),
            pos("rule", _R),
            pos("comb", _P, do),
            pos("val", _P, D),
            pos("dec", _P, _R, P),
        ),
        rule(
            atom("not_reachable", _R),
            pos("rule", _R),
            pos("comb", _P, ooa),
            pos("val", _P, NA),
            pos("dec", _P, _R, _E),
            neq(_E, NA),
        ),
        rule(
            atom("not_reachable", _R2),
            pos("rule", _R2),
            pos("comb", _P, fa),
            pos("dec", _P, _R1, _E, _I),
            pos("dec", _P, _R2, _E2, _J),
            neq(_E, NA),
            neq(_E2, NA),
            lt(_I, _J),
        ),
        rule(atom("not_reachable"), pos("not_reachable", _R)),
        constraint(neg("not_reachable")),
    ]


def emit_analysis(
    task: ProgramTask,
    store: PolicyStore,
    domains: AttributeDomains,
    combining_overrides: Optional[Mapping[CombiningAlgorithm, Sequence[LPRule]]] = None,
) -> LogicProgram:
    """
    Compile a store together with an analysis task.

    Args:
        task: GAP, CONFLICT or REACHABILITY
        store: Well-formed store
        domains: Attribute domains supplying the request space
        combining_overrides: Replacement rules for combining algorithms

    Returns:
        The store's program plus domain facts, a request generator and the
        task's property

    Raises:
        EmptyDomainException: For gap and conflict when a category the
            store references has no values
        ValueError: For ProgramTask.EVAL, which needs a request
    """
    if task is ProgramTask.EVAL:
        raise ValueError("the eval program needs a request; use emit_program")
    program = transform_store(store, domains, combining_overrides)
    program.extend(domain_facts(domains))
    if task is ProgramTask.GAP:
        program.extend(generate_one(domains, store.referenced_categories()))
        program.extend(gap_property(store))
    elif task is ProgramTask.CONFLICT:
        program.extend(_rule_facts(store))
        program.extend(generate_one(domains, store.referenced_categories()))
        program.extend(conflict_property())
    else:
        program.extend(_rule_facts(store))
        program.extend(generate_all())
        program.extend(reachability_property())
    program.check_safety()
    logger.debug("Emitted %s program with %d rules", task.value, len(program))
    return program


def emit_program(
    task: ProgramTask,
    store: PolicyStore,
    domains: AttributeDomains,
    request: Optional[Request] = None,
) -> LogicProgram:
    """
    Compile a store for any task; EVAL appends the request's facts.

    Raises:
        ValueError: For EVAL without a request
    """
    if task is ProgramTask.EVAL:
        if request is None:
            raise ValueError("the eval program needs a request")
        return transform_store(store, domains) + transform_request(request, domains)
    return emit_analysis(task, store, domains)


def serialize_program(program: LogicProgram) -> str:
    """
    Render a program in standard ASP syntax, one rule per line in emission order.

    Examples:
        >>> serialize_program(LogicProgram([fact("val", "null", "m")]))
        'val(null, m).\\n'
    """
    return str(program)
