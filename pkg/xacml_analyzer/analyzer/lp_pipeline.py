"""
Logic-program engine pipeline.

Emits, grounds and solves the programs of a store and reads decisions,
requests and findings back out of answer sets. Ground analysis programs
are cached by the fingerprints of their inputs.
"""

import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from xacml_analyzer.cache.program_cache import ProgramCache
from xacml_analyzer.engine.ground_program import AnswerSet, GroundProgram
from xacml_analyzer.engine.grounder import Grounder
from xacml_analyzer.engine.solver import Solver
from xacml_analyzer.lp.emitter import (
    domain_facts,
    emit_analysis,
    generate_one,
    transform_request,
    transform_store,
)
from xacml_analyzer.lp.program import LPRule
from xacml_analyzer.metrics.engine_metrics import EngineMetrics
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory, CombiningAlgorithm, Decision, ProgramTask
from xacml_analyzer.models.request import Fact, Request
from xacml_analyzer.models.store import PolicyStore

logger = logging.getLogger(__name__)

CombiningOverrides = Mapping[CombiningAlgorithm, Sequence[LPRule]]

_DECISIONS = {decision.value: decision for decision in Decision}
_CATEGORY_NAMES = frozenset(AttrCategory.names())


class LPPipeline:
    """
    Runs stores through the logic-program engine.

    Attributes:
        cache: Ground analysis programs
        metrics: Grounding and solving counters
    """

    def __init__(
        self,
        cache: Optional[ProgramCache] = None,
        metrics: Optional[EngineMetrics] = None,
    ) -> None:
        self.cache = cache if cache is not None else ProgramCache()
        self.metrics = metrics if metrics is not None else EngineMetrics()
        self._grounder = Grounder(self.metrics)

    def ground_analysis(
        self,
        task: ProgramTask,
        store: PolicyStore,
        domains: AttributeDomains,
        combining_overrides: Optional[CombiningOverrides] = None,
    ) -> GroundProgram:
        """
        Ground the analysis program of a task.

        Programs built with combining overrides are not cached.
        """

        def factory() -> GroundProgram:
            return self._grounder.ground(emit_analysis(task, store, domains, combining_overrides))

        if combining_overrides:
            return factory()
        key = (store.fingerprint(), domains.fingerprint(), task.value)
        return self.cache.get_or_ground(key, factory)

    def ground_request_space(
        self,
        store: PolicyStore,
        domains: AttributeDomains,
        combining_overrides: Optional[CombiningOverrides] = None,
    ) -> GroundProgram:
        """
        Ground the store together with every request of the generate-one space.

        The choice rules only make the category atoms possible; callers
        drop them and fix one request's atoms as facts per solve.
        """

        def factory() -> GroundProgram:
            program = transform_store(store, domains, combining_overrides)
            program.extend(domain_facts(domains))
            program.extend(generate_one(domains))
            return self._grounder.ground(program)

        if combining_overrides:
            return factory()
        key = (store.fingerprint(), domains.fingerprint(), "request_space")
        return self.cache.get_or_ground(key, factory)

    def evaluate(
        self, store: PolicyStore, request: Request, domains: AttributeDomains
    ) -> Dict[str, Optional[Decision]]:
        """
        Decide every component of a store from the unique answer set.

        Returns:
            Decision per component in pre-order; None where the answer set
            does not hold exactly one val atom for the component
        """
        program = transform_store(store, domains) + transform_request(request, domains)
        answer = Solver(self._grounder.ground(program), self.metrics).solve_unique()
        return component_decisions(answer, store.ids())

    def models(
        self,
        task: ProgramTask,
        store: PolicyStore,
        domains: AttributeDomains,
        limit: Optional[int] = None,
    ) -> List[AnswerSet]:
        """Enumerate the answer sets of an analysis program."""
        program = self.ground_analysis(task, store, domains)
        logger.debug(
            "Solving %s program: %d ground rules, %d atoms, %d choice groups",
            task.value,
            len(program.rules),
            len(program.atoms),
            len(program.choices),
        )
        return Solver(program, self.metrics).enumerate_models(limit)

    def to_dict(self) -> Dict[str, object]:
        """Counters for reports."""
        return {"engine": self.metrics.to_dict(), "cache": self.cache.metrics.to_dict()}


def component_decisions(
    answer: AnswerSet, component_ids: Iterable[str]
) -> Dict[str, Optional[Decision]]:
    """Read val(X, V) for each component X; None unless exactly one such atom holds."""
    found: Dict[str, List[Decision]] = {}
    for val_atom in answer.with_predicate("val", 2):
        identifier, value = val_atom.args
        if isinstance(identifier, str) and value in _DECISIONS:
            found.setdefault(identifier, []).append(_DECISIONS[value])
    return {
        cid: found[cid][0] if len(found.get(cid, ())) == 1 else None for cid in component_ids
    }


def request_from_model(answer: AnswerSet) -> Request:
    """The request a model selected: its unary category atoms."""
    facts = [
        Fact(predicate=a.predicate, args=a.args)
        for a in answer.atoms
        if a.predicate in _CATEGORY_NAMES and len(a.args) == 1
    ]
    return Request(facts=frozenset(facts))
