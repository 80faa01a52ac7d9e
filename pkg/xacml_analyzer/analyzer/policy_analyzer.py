"""
Gap, conflict and reachability analyses.

Each analysis runs on the native evaluator, on the logic-program engine,
or on both with their findings compared. Native analyses sweep the
request space, optionally split across worker threads; the results are
merged back into the space's order before truncation.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, TypeVar

from xacml_analyzer.analyzer.lp_pipeline import (
    LPPipeline,
    component_decisions,
    request_from_model,
)
from xacml_analyzer.analyzer.request_space import RequestSpace, request_order_key
from xacml_analyzer.cache.program_cache import ProgramCache
from xacml_analyzer.config.analyzer_config import AnalyzerConfig
from xacml_analyzer.exception.exceptions import EngineMismatchException
from xacml_analyzer.models.analysis_report import AnalysisReport
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import (
    AnalysisTask,
    CombiningAlgorithm,
    Decision,
    Engine,
    ProgramTask,
    ReachabilityMode,
    UnreachableReason,
    WitnessKind,
)
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore
from xacml_analyzer.models.witness import Witness
from xacml_analyzer.pdp.evaluator import evaluate, trace

logger = logging.getLogger(__name__)

T = TypeVar("T")


def shadowing_reason(
    store: PolicyStore, rule_id: str, decisions: Dict[str, Optional[Decision]]
) -> Optional[UnreachableReason]:
    """
    Classify one rule under one request's component decisions.

    Returns:
        ALWAYS_NA when the rule is not applicable, the parent algorithm's
        shadowing reason when that algorithm hides the rule's decision,
        otherwise None
    """
    decision = decisions[rule_id]
    if decision is Decision.NOT_APPLICABLE:
        return UnreachableReason.ALWAYS_NA
    parent_id = store.parent_of(rule_id)
    parent = store.get(parent_id)
    parent_decision = decisions[parent_id]
    algorithm = parent.algorithm
    if algorithm is CombiningAlgorithm.PERMIT_OVERRIDES:
        shadowed = decision is Decision.DENY and parent_decision is Decision.PERMIT
    elif algorithm is CombiningAlgorithm.DENY_OVERRIDES:
        shadowed = decision is Decision.PERMIT and parent_decision is Decision.DENY
    elif algorithm is CombiningAlgorithm.ONLY_ONE_APPLICABLE:
        shadowed = parent_decision is Decision.NOT_APPLICABLE
    else:
        earlier = parent.children[: parent.children.index(rule_id)]
        shadowed = any(decisions[s] is not Decision.NOT_APPLICABLE for s in earlier)
    return UnreachableReason.shadowed_by(algorithm) if shadowed else None


class PolicyAnalyzer:
    """
    Runs analyses with one configuration.

    Attributes:
        config: Budget, truncation, engine and reachability settings
        pipeline: Logic-program engine pipeline, shared across analyses

    Examples:
        >>> analyzer = PolicyAnalyzer(AnalyzerConfig.builder().engine(Engine.BOTH).build())
        >>> report = analyzer.check_completeness(store, domains)
        >>> report.has_findings
        False
    """

    def __init__(
        self,
        config: Optional[AnalyzerConfig] = None,
        pipeline: Optional[LPPipeline] = None,
    ) -> None:
        self.config = config if config is not None else AnalyzerConfig()
        self.pipeline = (
            pipeline
            if pipeline is not None
            else LPPipeline(ProgramCache(self.config.program_cache_size))
        )

    # ==================== Entry points ====================

    def analyze(
        self, task: AnalysisTask, store: PolicyStore, domains: AttributeDomains
    ) -> AnalysisReport:
        """Run one analysis by task."""
        if task is AnalysisTask.GAP:
            return self.check_completeness(store, domains)
        if task is AnalysisTask.CONFLICT:
            return self.check_conflicts(store, domains)
        return self.check_reachability(store, domains)

    def check_completeness(self, store: PolicyStore, domains: AttributeDomains) -> AnalysisReport:
        """
        Find requests on which the root is not applicable.

        Raises:
            BudgetExceededException: If the request space exceeds the budget
            EmptyDomainException: If a category the store uses has no values
            EngineMismatchException: If both engines run and disagree
        """
        space = self._checked_space(store, domains)
        return self._run(
            AnalysisTask.GAP,
            store,
            domains,
            native=lambda: self._native_gaps(store, space),
            lp=lambda: self._lp_gaps(store, domains),
            requests=space.size,
        )

    def check_conflicts(self, store: PolicyStore, domains: AttributeDomains) -> AnalysisReport:
        """
        Find requests under which one rule permits and another denies.

        One witness per (request, permitting rule, denying rule), ordered by
        request and then by rule position.

        Raises:
            BudgetExceededException: If the request space exceeds the budget
            EmptyDomainException: If a category the store uses has no values
            EngineMismatchException: If both engines run and disagree
        """
        space = self._checked_space(store, domains)
        return self._run(
            AnalysisTask.CONFLICT,
            store,
            domains,
            native=lambda: self._native_conflicts(store, space),
            lp=lambda: self._lp_conflicts(store, domains),
            requests=space.size,
        )

    def check_reachability(self, store: PolicyStore, domains: AttributeDomains) -> AnalysisReport:
        """
        Find rules whose decision never reaches their parent.

        The per-request reading flags a rule when, for every request of the
        space, it is not applicable or its parent's algorithm shadows it.
        The saturated reading checks the same conditions once, against the
        request carrying every declared value. The logic-program engine
        implements the saturated reading; engines are compared on it.

        Raises:
            BudgetExceededException: If the per-request reading runs on a
                space larger than the budget
            EngineMismatchException: If both engines run and disagree
        """
        mode = self.config.reachability_mode
        space = RequestSpace(domains)
        per_request = mode in (ReachabilityMode.PER_REQUEST, ReachabilityMode.BOTH)
        if per_request and self.config.engine is not Engine.LP:
            space.check_budget(self.config.budget)
        if self.config.engine is Engine.LP and mode is ReachabilityMode.PER_REQUEST:
            logger.warning("The lp engine checks reachability on the saturated request only")

        def native() -> List[Witness]:
            found: List[Witness] = []
            if per_request:
                found.extend(self._native_unreachable_per_request(store, space))
            if mode is not ReachabilityMode.PER_REQUEST:
                found.extend(saturated())
            return found

        def saturated() -> List[Witness]:
            return self._native_unreachable_saturated(store, space)

        return self._run(
            AnalysisTask.REACHABILITY,
            store,
            domains,
            native=native,
            lp=lambda: self._lp_unreachable(store, domains, space),
            requests=space.size if per_request else 1,
            comparable=saturated,
        )

    # ==================== Orchestration ====================

    def _checked_space(self, store: PolicyStore, domains: AttributeDomains) -> RequestSpace:
        space = RequestSpace(domains)
        space.check_referenced(store)
        space.check_budget(self.config.budget)
        return space

    def _run(
        self,
        task: AnalysisTask,
        store: PolicyStore,
        domains: AttributeDomains,
        native: Callable[[], List[Witness]],
        lp: Callable[[], List[Witness]],
        requests: int,
        comparable: Optional[Callable[[], List[Witness]]] = None,
    ) -> AnalysisReport:
        engine = self.config.engine
        logger.info(
            "Starting %s analysis of %s with engine %s over %d requests",
            task.value,
            store.root_id,
            engine.value,
            requests,
        )
        start = time.perf_counter()
        if engine is Engine.NATIVE:
            witnesses = native()
        elif engine is Engine.LP:
            witnesses = lp()
        else:
            witnesses = native()
            expected = comparable() if comparable is not None else witnesses
            _compare(task, expected, lp())
        elapsed_ms = (time.perf_counter() - start) * 1000

        total = len(witnesses)
        kept = witnesses[: self.config.max_witnesses]
        if total > len(kept):
            logger.warning(
                "%s analysis found %d witnesses; reporting the first %d",
                task.value,
                total,
                len(kept),
            )
        metrics: Dict[str, object] = {"requests": requests}
        if engine is not Engine.NATIVE:
            metrics.update(self.pipeline.to_dict())
        logger.info(
            "Finished %s analysis: %d witnesses in %.1f ms", task.value, total, elapsed_ms
        )
        return AnalysisReport(
            task=task,
            engine=engine,
            store_hash=store.fingerprint(),
            domain_sizes=domains.sizes(),
            witnesses=kept,
            total=total,
            truncated=total > len(kept),
            elapsed_ms=elapsed_ms,
            metrics=metrics,
        )

    def _sweep(
        self, space: RequestSpace, work: Callable[[Sequence[Request]], List[T]]
    ) -> List[T]:
        """Apply ``work`` to contiguous chunks of the space and concatenate in order."""
        chunks = space.partition(self.config.workers)
        if len(chunks) == 1:
            return work(chunks[0])
        with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
            results = list(executor.map(work, chunks))
        return [item for result in results for item in result]

    # ==================== Native engine ====================

    def _native_gaps(self, store: PolicyStore, space: RequestSpace) -> List[Witness]:
        root = store.root_id
        domains = space.domains

        def work(requests: Sequence[Request]) -> List[Witness]:
            return [
                _gap_witness(root, request, Engine.NATIVE)
                for request in requests
                if evaluate(store, request, domains) is Decision.NOT_APPLICABLE
            ]

        return self._sweep(space, work)

    def _native_conflicts(self, store: PolicyStore, space: RequestSpace) -> List[Witness]:
        rule_ids = store.rule_ids()
        domains = space.domains

        def work(requests: Sequence[Request]) -> List[Witness]:
            found = []
            for request in requests:
                decisions = trace(store, request, domains, rule_ids)
                permits = [r for r in rule_ids if decisions[r] is Decision.PERMIT]
                denies = [r for r in rule_ids if decisions[r] is Decision.DENY]
                found.extend(
                    _conflict_witness(request, permit, deny, Engine.NATIVE)
                    for permit in permits
                    for deny in denies
                )
            return found

        return self._sweep(space, work)

    def _native_unreachable_per_request(
        self, store: PolicyStore, space: RequestSpace
    ) -> List[Witness]:
        rule_ids = store.rule_ids()
        domains = space.domains

        def work(requests: Sequence[Request]) -> List[Tuple[Set[str], Set[str]]]:
            applicable: Set[str] = set()
            reachable: Set[str] = set()
            for request in requests:
                decisions = trace(store, request, domains)
                for rule_id in rule_ids:
                    reason = shadowing_reason(store, rule_id, decisions)
                    if reason is not UnreachableReason.ALWAYS_NA:
                        applicable.add(rule_id)
                    if reason is None:
                        reachable.add(rule_id)
            return [(applicable, reachable)]

        applicable: Set[str] = set()
        reachable: Set[str] = set()
        for chunk_applicable, chunk_reachable in self._sweep(space, work):
            applicable |= chunk_applicable
            reachable |= chunk_reachable

        witnesses = []
        for rule_id in rule_ids:
            if rule_id in reachable:
                continue
            parent_id = store.parent_of(rule_id)
            if rule_id in applicable:
                reason = UnreachableReason.shadowed_by(store.get(parent_id).algorithm)
            else:
                reason = UnreachableReason.ALWAYS_NA
            witnesses.append(
                Witness(
                    kind=WitnessKind.UNREACHABLE,
                    components=(rule_id, parent_id),
                    decisions={},
                    engine=Engine.NATIVE,
                    provenance=ReachabilityMode.PER_REQUEST,
                    reason=reason,
                )
            )
        return witnesses

    def _native_unreachable_saturated(
        self, store: PolicyStore, space: RequestSpace
    ) -> List[Witness]:
        request = space.saturated()
        decisions: Dict[str, Optional[Decision]] = dict(trace(store, request, space.domains))
        return _saturated_witnesses(store, request, decisions, store.rule_ids(), Engine.NATIVE)

    # ==================== Logic-program engine ====================

    def _lp_gaps(self, store: PolicyStore, domains: AttributeDomains) -> List[Witness]:
        models = self.pipeline.models(ProgramTask.GAP, store, domains)
        requests = sorted((request_from_model(m) for m in models), key=request_order_key)
        return [_gap_witness(store.root_id, request, Engine.LP) for request in requests]

    def _lp_conflicts(self, store: PolicyStore, domains: AttributeDomains) -> List[Witness]:
        position = {rule_id: i for i, rule_id in enumerate(store.rule_ids())}
        found = []
        for model in self.pipeline.models(ProgramTask.CONFLICT, store, domains):
            request = request_from_model(model)
            pairs = [
                (str(a.args[0]), str(a.args[1])) for a in model.with_predicate("conflict_pair", 2)
            ]
            pairs.sort(key=lambda pair: (position[pair[0]], position[pair[1]]))
            found.extend(_conflict_witness(request, p, d, Engine.LP) for p, d in pairs)
        found.sort(key=lambda w: request_order_key(w.request))
        return found

    def _lp_unreachable(
        self, store: PolicyStore, domains: AttributeDomains, space: RequestSpace
    ) -> List[Witness]:
        models = self.pipeline.models(ProgramTask.REACHABILITY, store, domains, limit=1)
        if not models:
            return []
        model = models[0]
        flagged = {str(a.args[0]) for a in model.with_predicate("not_reachable", 1)}
        rule_ids = [rule_id for rule_id in store.rule_ids() if rule_id in flagged]
        decisions = component_decisions(model, store.ids())
        return _saturated_witnesses(
            store, space.saturated(), decisions, rule_ids, Engine.LP, keep_unclassified=True
        )


def _gap_witness(root_id: str, request: Request, engine: Engine) -> Witness:
    return Witness(
        kind=WitnessKind.GAP,
        request=request,
        components=(root_id,),
        decisions={root_id: Decision.NOT_APPLICABLE},
        engine=engine,
    )


def _conflict_witness(request: Request, permit: str, deny: str, engine: Engine) -> Witness:
    return Witness(
        kind=WitnessKind.CONFLICT,
        request=request,
        components=(permit, deny),
        decisions={permit: Decision.PERMIT, deny: Decision.DENY},
        engine=engine,
    )


def _saturated_witnesses(
    store: PolicyStore,
    request: Request,
    decisions: Dict[str, Optional[Decision]],
    rule_ids: Sequence[str],
    engine: Engine,
    keep_unclassified: bool = False,
) -> List[Witness]:
    witnesses = []
    for rule_id in rule_ids:
        parent_id = store.parent_of(rule_id)
        if decisions[rule_id] is None or decisions[parent_id] is None:
            reason = None
        else:
            reason = shadowing_reason(store, rule_id, decisions)
        if reason is None and not keep_unclassified:
            continue
        if reason is None:
            logger.warning("Rule %s is flagged but matches no unreachability clause", rule_id)
        witnesses.append(
            Witness(
                kind=WitnessKind.UNREACHABLE,
                request=request,
                components=(rule_id, parent_id),
                decisions={
                    cid: decisions[cid]
                    for cid in (rule_id, parent_id)
                    if decisions[cid] is not None
                },
                engine=engine,
                provenance=ReachabilityMode.SATURATED,
                reason=reason,
            )
        )
    return witnesses


def _compare(task: AnalysisTask, native: List[Witness], lp: List[Witness]) -> None:
    native_keys = {w.identity() for w in native}
    lp_keys = {w.identity() for w in lp}
    if native_keys == lp_keys:
        logger.debug("Engines agree on %d %s witnesses", len(native_keys), task.value)
        return
    only_native = sorted(native_keys - lp_keys, key=repr)
    only_lp = sorted(lp_keys - native_keys, key=repr)
    raise EngineMismatchException(
        f"engines disagree on the {task.value} analysis: "
        f"{len(only_native)} witnesses only from native, {len(only_lp)} only from lp",
        context={
            "task": task.value,
            "only_native": [repr(key) for key in only_native[:5]],
            "only_lp": [repr(key) for key in only_lp[:5]],
        },
    )


def _configured(
    config: Optional[AnalyzerConfig], engine: Optional[Engine], max_witnesses: Optional[int]
) -> AnalyzerConfig:
    base = config if config is not None else AnalyzerConfig()
    updates: Dict[str, object] = {}
    if engine is not None:
        updates["engine"] = engine
    if max_witnesses is not None:
        updates["max_witnesses"] = max_witnesses
    return base.model_copy(update=updates) if updates else base


def check_completeness(
    store: PolicyStore,
    domains: AttributeDomains,
    engine: Optional[Engine] = None,
    max_witnesses: Optional[int] = None,
    config: Optional[AnalyzerConfig] = None,
) -> AnalysisReport:
    """
    Find requests of the space on which the root is not applicable.

    Examples:
        >>> report = check_completeness(store, AttributeDomains.of(subject=["doctor", "nurse"]))
        >>> [str(w.request) for w in report.witnesses]
        ['{subject(nurse)}']
    """
    analyzer = PolicyAnalyzer(_configured(config, engine, max_witnesses))
    return analyzer.check_completeness(store, domains)


def check_conflicts(
    store: PolicyStore,
    domains: AttributeDomains,
    engine: Optional[Engine] = None,
    max_witnesses: Optional[int] = None,
    config: Optional[AnalyzerConfig] = None,
) -> AnalysisReport:
    """Find (request, permitting rule, denying rule) triples over the request space."""
    analyzer = PolicyAnalyzer(_configured(config, engine, max_witnesses))
    return analyzer.check_conflicts(store, domains)


def check_reachability(
    store: PolicyStore,
    domains: AttributeDomains,
    engine: Optional[Engine] = None,
    mode: Optional[ReachabilityMode] = None,
    config: Optional[AnalyzerConfig] = None,
) -> AnalysisReport:
    """Classify every rule of a store as reachable or unreachable."""
    base = _configured(config, engine, None)
    if mode is not None:
        base = base.model_copy(update={"reachability_mode": mode})
    return PolicyAnalyzer(base).check_reachability(store, domains)
