"""
Differential check between the native evaluator and the logic-program engine.

For every request of the space, every component's native decision must
equal the value V of the single val(X, V) atom in the unique answer set
of the store's program with the request's facts. The store is grounded
once over the whole space; each request is then solved by fixing its
category atoms.
"""

import logging
from typing import Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from xacml_analyzer.analyzer.lp_pipeline import LPPipeline, component_decisions
from xacml_analyzer.analyzer.request_space import RequestSpace
from xacml_analyzer.engine.solver import Solver
from xacml_analyzer.lp.program import LPRule, atom
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import CombiningAlgorithm, Decision
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore
from xacml_analyzer.pdp.evaluator import trace

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 65536


class Divergence(BaseModel):
    """
    The first point where the engines disagree.

    Attributes:
        request: Request under which they disagree
        component: Component whose decisions differ
        native: Decision of the native evaluator
        lp: Decision read from the answer set; None when the answer set
            holds no or several val atoms for the component
    """

    request: Request
    component: str
    native: Decision
    lp: Optional[Decision] = None

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        lp = self.lp.display_name if self.lp is not None else "none"
        return (
            f"{self.component} under {self.request}: "
            f"native {self.native.display_name}, lp {lp}"
        )


class DifferentialResult(BaseModel):
    """
    Outcome of a differential check.

    Attributes:
        passed: Whether every request and component agreed
        requests_checked: Requests evaluated, including the diverging one
        divergence: First disagreement, in request and pre-order
    """

    passed: bool
    requests_checked: int
    divergence: Optional[Divergence] = None

    model_config = ConfigDict(frozen=True)


def differential_check(
    store: PolicyStore,
    domains: AttributeDomains,
    budget: int = DEFAULT_BUDGET,
    combining_overrides: Optional[Mapping[CombiningAlgorithm, Sequence[LPRule]]] = None,
    pipeline: Optional[LPPipeline] = None,
) -> DifferentialResult:
    """
    Compare both engines on every component over the whole request space.

    Args:
        store: Store to check
        domains: Domains spanning the request space
        budget: Largest request space to enumerate
        combining_overrides: Replacement combining programs, for checking
            variants against the evaluator
        pipeline: Pipeline to ground with; a fresh one by default

    Returns:
        The first divergence, or a pass

    Raises:
        BudgetExceededException: If the request space exceeds the budget
    """
    space = RequestSpace(domains)
    space.check_budget(budget)
    pipeline = pipeline if pipeline is not None else LPPipeline()
    program = pipeline.ground_request_space(store, domains, combining_overrides)
    solver = Solver(program.without_choices(), pipeline.metrics)
    component_ids = store.ids()

    checked = 0
    for request in space:
        checked += 1
        facts = [program.atom_id(atom(f.predicate, *f.args)) for f in request.facts]
        answer = solver.answer_set(solver.truth(i for i in facts if i is not None))
        lp = component_decisions(answer, component_ids)
        native = trace(store, request, domains)
        for component_id in component_ids:
            if native[component_id] is not lp[component_id]:
                divergence = Divergence(
                    request=request,
                    component=component_id,
                    native=native[component_id],
                    lp=lp[component_id],
                )
                logger.debug("Divergence after %d requests: %s", checked, divergence)
                return DifferentialResult(
                    passed=False, requests_checked=checked, divergence=divergence
                )
    logger.info("Engines agree on %d requests of %s", checked, store.root_id)
    return DifferentialResult(passed=True, requests_checked=checked)
