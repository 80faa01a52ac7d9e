"""
Tests for the gap, conflict and reachability analyses.
"""

import logging

import pytest
from hypothesis import given, settings

from xacml_analyzer.analyzer.lp_pipeline import LPPipeline
from xacml_analyzer.analyzer.policy_analyzer import (
    PolicyAnalyzer,
    check_completeness,
    check_conflicts,
    check_reachability,
)
from xacml_analyzer.analyzer.request_space import RequestSpace
from xacml_analyzer.cache.program_cache import ProgramCache
from xacml_analyzer.config.analyzer_config import AnalyzerConfig
from xacml_analyzer.exception.exceptions import (
    BudgetExceededException,
    EmptyDomainException,
    ErrorCode,
    PolicyValidationException,
)
from xacml_analyzer.models.enums import (
    AnalysisTask,
    Decision,
    Engine,
    ReachabilityMode,
    UnreachableReason,
    WitnessKind,
)
from xacml_analyzer.pdp.evaluator import evaluate

from tests.conftest import (
    ALL_PERMIT_POLICIES,
    GAP_DOMAINS,
    GAP_POLICIES,
    REACHABILITY_DOMAINS,
    load,
)
from tests.policy_generators import random_cases


def _analyzer(**values) -> PolicyAnalyzer:
    return PolicyAnalyzer(AnalyzerConfig(**values))


def _flagged(report):
    return [w.components[0] for w in report.witnesses]


# ==================== Gaps ====================


@pytest.mark.unit
class TestCompleteness:
    """Requests on which the root is not applicable."""

    def test_gap_found_for_nurses(self, gap_case):
        store, domains = gap_case
        report = check_completeness(store, domains)
        assert report.task is AnalysisTask.GAP
        assert report.total == 2
        assert [str(w.request) for w in report.witnesses] == [
            "{subject(nurse), action(read), resource(record)}",
            "{subject(nurse), action(write), resource(record)}",
        ]
        for witness in report.witnesses:
            assert witness.kind is WitnessKind.GAP
            assert witness.components == ("ps1",)
            assert witness.decisions == {"ps1": Decision.NOT_APPLICABLE}

    def test_complete_store(self, complete_case):
        store, domains = complete_case
        report = check_completeness(store, domains)
        assert report.total == 0
        assert not report.has_findings

    @pytest.mark.parametrize("engine", [Engine.LP, Engine.BOTH])
    def test_engines_agree(self, gap_case, engine):
        store, domains = gap_case
        native = check_completeness(store, domains)
        report = check_completeness(store, domains, engine=engine)
        assert [w.identity() for w in report.witnesses] == [
            w.identity() for w in native.witnesses
        ]

    def test_lp_finds_no_model_for_complete_store(self, complete_case):
        store, domains = complete_case
        assert check_completeness(store, domains, engine=Engine.LP).total == 0

    def test_report_identifies_inputs(self, gap_case):
        store, domains = gap_case
        report = check_completeness(store, domains)
        assert report.store_hash == store.fingerprint()
        assert report.domain_sizes["subject"] == 2
        assert report.metrics == {"requests": 4}

    def test_empty_referenced_domain(self):
        store, domains = load(GAP_POLICIES, "actions: read\n", check_domains=False)
        with pytest.raises(EmptyDomainException) as exc_info:
            check_completeness(store, domains)
        assert exc_info.value.error_code is ErrorCode.EMPTY_DOMAIN


# ==================== Conflicts ====================


@pytest.mark.unit
class TestConflicts:
    """Requests under which a permit and a deny rule both apply."""

    def test_conflict_on_every_request(self, conflict_case):
        store, domains = conflict_case
        report = check_conflicts(store, domains)
        assert report.total == RequestSpace(domains).size == 4
        for witness in report.witnesses:
            assert witness.kind is WitnessKind.CONFLICT
            assert witness.components == ("r1", "r2")
            assert witness.decisions == {"r1": Decision.PERMIT, "r2": Decision.DENY}

    def test_no_conflict_without_deny(self):
        store, domains = load(ALL_PERMIT_POLICIES, GAP_DOMAINS)
        assert check_conflicts(store, domains, engine=Engine.BOTH).total == 0

    def test_engines_agree(self, conflict_case):
        store, domains = conflict_case
        native = check_conflicts(store, domains)
        lp = check_conflicts(store, domains, engine=Engine.LP)
        assert [w.identity() for w in lp.witnesses] == [w.identity() for w in native.witnesses]
        check_conflicts(store, domains, engine=Engine.BOTH)

    def test_witnesses_in_request_order(self, conflict_case):
        store, domains = conflict_case
        report = check_conflicts(store, domains)
        assert [w.request for w in report.witnesses] == list(RequestSpace(domains))


# ==================== Reachability ====================


@pytest.mark.unit
class TestReachability:
    """One fixture per unreachability clause."""

    @pytest.mark.parametrize("mode", [ReachabilityMode.PER_REQUEST, ReachabilityMode.SATURATED])
    def test_native_classification(self, reachability_case, mode):
        store, domains, expected, reason = reachability_case
        report = check_reachability(store, domains, mode=mode)
        assert _flagged(report) == expected
        for witness in report.witnesses:
            assert witness.kind is WitnessKind.UNREACHABLE
            assert witness.reason is UnreachableReason(reason)
            assert witness.provenance is mode
            assert witness.components[1] == store.parent_of(witness.components[0])

    def test_per_request_witnesses_carry_no_request(self, reachability_case):
        store, domains, _, _ = reachability_case
        report = check_reachability(store, domains, mode=ReachabilityMode.PER_REQUEST)
        for witness in report.witnesses:
            assert witness.request is None
            assert witness.decisions == {}

    def test_both_readings(self, reachability_case):
        store, domains, expected, _ = reachability_case
        report = check_reachability(store, domains, mode=ReachabilityMode.BOTH)
        provenances = [w.provenance for w in report.witnesses]
        assert provenances == [ReachabilityMode.PER_REQUEST] * len(expected) + [
            ReachabilityMode.SATURATED
        ] * len(expected)

    def test_saturated_witness_request(self, reachability_case):
        store, domains, _, _ = reachability_case
        report = check_reachability(store, domains, mode=ReachabilityMode.SATURATED)
        for witness in report.witnesses:
            assert witness.request == RequestSpace(domains).saturated()

    def test_lp_engine(self, reachability_case):
        store, domains, expected, reason = reachability_case
        report = check_reachability(
            store, domains, engine=Engine.LP, mode=ReachabilityMode.SATURATED
        )
        assert _flagged(report) == expected
        assert {w.reason for w in report.witnesses} == {UnreachableReason(reason)}
        assert {w.engine for w in report.witnesses} == {Engine.LP}

    def test_engines_agree(self, reachability_case):
        store, domains, expected, _ = reachability_case
        report = check_reachability(store, domains, engine=Engine.BOTH, mode=ReachabilityMode.BOTH)
        assert report.total == 2 * len(expected)

    def test_lp_per_request_falls_back_to_saturated(self, reachability_case, caplog):
        store, domains, expected, _ = reachability_case
        with caplog.at_level(logging.WARNING, logger="xacml_analyzer.analyzer.policy_analyzer"):
            report = check_reachability(
                store, domains, engine=Engine.LP, mode=ReachabilityMode.PER_REQUEST
            )
        assert "saturated request only" in caplog.text
        assert _flagged(report) == expected

    def test_removal_keeps_root_decisions(self, reachability_case):
        store, domains, expected, _ = reachability_case
        for rule_id in expected:
            pruned = store.without_rule(rule_id)
            for request in RequestSpace(domains):
                assert evaluate(pruned, request, domains) is evaluate(store, request, domains)

    def test_ooa_removal_can_change_decisions(self):
        store, domains = load(
            "policyset ps1 = [null, <p1>, po]\n"
            "policy p1 = [null, <r1, r2>, ooa]\n"
            "rule r1 = [permit, null, true]\n"
            "rule r2 = [deny, null, true]\n",
            REACHABILITY_DOMAINS,
        )
        report = check_reachability(store, domains)
        assert _flagged(report) == ["r1", "r2"]
        assert {w.reason for w in report.witnesses} == {UnreachableReason.OOA_SHADOWED}
        pruned = store.without_rule("r1")
        for request in RequestSpace(domains):
            assert evaluate(store, request, domains) is Decision.NOT_APPLICABLE
            assert evaluate(pruned, request, domains) is Decision.DENY

    def test_reachable_store(self, complete_case):
        store, domains = complete_case
        assert check_reachability(store, domains, engine=Engine.BOTH).total == 0

    def test_default_reading_is_per_request(self, complete_case):
        store, domains = complete_case
        report = check_reachability(store, domains)
        assert report.total == 0
        assert report.metrics["requests"] == RequestSpace(domains).size

    def test_saturated_reading_overapproximates(self, complete_case):
        store, domains = complete_case
        for engine in (Engine.NATIVE, Engine.LP):
            report = check_reachability(
                store, domains, engine=engine, mode=ReachabilityMode.SATURATED
            )
            assert _flagged(report) == ["r_nurse"]
            assert report.witnesses[0].reason is UnreachableReason.FA_SHADOWED


# ==================== Configuration ====================


@pytest.mark.unit
class TestAnalyzerConfiguration:
    """Budget, truncation, workers and caching."""

    def test_budget_exceeded(self, gap_case):
        store, domains = gap_case
        with pytest.raises(BudgetExceededException) as exc_info:
            _analyzer(budget=3).check_completeness(store, domains)
        assert exc_info.value.space_size == 4
        assert exc_info.value.budget == 3
        assert "exceeds the budget of 3" in str(exc_info.value)

    def test_saturated_reachability_ignores_budget(self, gap_case):
        store, domains = gap_case
        analyzer = _analyzer(budget=1, reachability_mode=ReachabilityMode.SATURATED)
        assert analyzer.check_reachability(store, domains).total == 0

    def test_truncation(self, conflict_case, caplog):
        store, domains = conflict_case
        with caplog.at_level(logging.WARNING, logger="xacml_analyzer.analyzer.policy_analyzer"):
            report = check_conflicts(store, domains, max_witnesses=2)
        assert report.total == 4
        assert len(report.witnesses) == 2
        assert report.truncated
        assert "reporting the first 2" in caplog.text

    def test_workers_keep_order(self, conflict_case):
        store, domains = conflict_case
        single = _analyzer(workers=1).check_conflicts(store, domains)
        threaded = _analyzer(workers=3).check_conflicts(store, domains)
        assert threaded.witnesses == single.witnesses

    def test_analyze_dispatches_on_task(self, gap_case):
        store, domains = gap_case
        analyzer = PolicyAnalyzer()
        for task in AnalysisTask:
            assert analyzer.analyze(task, store, domains).task is task

    def test_program_cache_reused(self, gap_case):
        store, domains = gap_case
        pipeline = LPPipeline(ProgramCache(maxsize=4))
        analyzer = PolicyAnalyzer(AnalyzerConfig(engine=Engine.LP), pipeline)
        analyzer.check_completeness(store, domains)
        report = analyzer.check_completeness(store, domains)
        assert pipeline.cache.metrics.hits == 1
        assert pipeline.cache.metrics.misses == 1
        assert report.metrics["cache"]["hits"] == 1
        assert report.metrics["engine"]["groundings"] == 1


# ==================== Random stores ====================


@pytest.mark.slow
@pytest.mark.property
class TestAnalysesOnRandomStores:
    """Engine agreement and removal invariance on generated stores."""

    @settings(max_examples=30, deadline=None)
    @given(case=random_cases)
    def test_engines_agree(self, case):
        store, domains = case
        analyzer = _analyzer(engine=Engine.BOTH, reachability_mode=ReachabilityMode.SATURATED)
        for task in AnalysisTask:
            analyzer.analyze(task, store, domains)

    @settings(max_examples=50, deadline=None)
    @given(case=random_cases)
    def test_removing_unreachable_rules_keeps_decisions(self, case):
        store, domains = case
        report = _analyzer(reachability_mode=ReachabilityMode.PER_REQUEST).check_reachability(
            store, domains
        )
        requests = list(RequestSpace(domains))
        for witness in report.witnesses:
            if witness.reason is UnreachableReason.OOA_SHADOWED:
                continue
            try:
                pruned = store.without_rule(witness.components[0])
            except PolicyValidationException:
                continue
            for request in requests:
                assert evaluate(pruned, request, domains) is evaluate(store, request, domains), (
                    witness.components,
                    str(request),
                )
