"""
Tests for the transformation of policy stores into logic programs.
"""

import logging

import pytest
from hypothesis import given, settings

from xacml_analyzer.analyzer.lp_pipeline import LPPipeline, component_decisions
from xacml_analyzer.engine.acyclicity import check_acyclic
from xacml_analyzer.engine.grounder import ground
from xacml_analyzer.engine.solver import solve_unique
from xacml_analyzer.exception.exceptions import EmptyDomainException
from xacml_analyzer.lp.emitter import (
    emit_analysis,
    emit_program,
    generate_one,
    serialize_program,
    transform_combining,
    transform_request,
    transform_store,
)
from xacml_analyzer.lp.lp_parser import parse_program
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory, CombiningAlgorithm, ProgramTask
from xacml_analyzer.models.request import Request
from xacml_analyzer.parser.request_parser import parse_request

from tests.conftest import (
    CONDITION_DOMAINS,
    CONDITION_POLICIES,
    GAP_DOMAINS,
    GAP_POLICIES,
    MINIMAL_DOMAINS,
    MINIMAL_POLICIES,
    load,
)
from tests.policy_generators import random_cases

ANALYSIS_TASKS = [ProgramTask.GAP, ProgramTask.CONFLICT, ProgramTask.REACHABILITY]
RESERVED_WORD_DOMAINS = "subjects: doctor, not\nactions: read\n"


def _lines(program) -> list:
    return serialize_program(program).splitlines()


# ==================== Store transformation ====================


@pytest.mark.unit
class TestTransformStore:
    """Rules emitted for targets, conditions and components."""

    def test_minimal_store(self, minimal_case):
        store, domains = minimal_case
        lines = _lines(transform_store(store, domains))
        assert lines[0] == "val(null, m)."
        assert "val(match_1, m) :- subject(doctor)." in lines
        assert "val(match_1, nm) :- not subject(doctor)." in lines
        assert "val(r1, p) :- val(target_1, m), val(cond_true, t)." in lines
        assert "dec(ps1, p1, E) :- val(p1, E)." in lines
        assert "comb(p1, po)." in lines
        assert "algo(po, P, p) :- comb(P, po), dec(P, R, p)." in lines

    def test_unused_algorithms_not_emitted(self, minimal_case):
        store, domains = minimal_case
        text = serialize_program(transform_store(store, domains))
        assert "algo(do," not in text
        assert "blocked" not in text
        assert "not_one_applicable" not in text

    def test_deny_overrides_mirrors_permit_overrides(self):
        lines = [str(r) for r in transform_combining(CombiningAlgorithm.DENY_OVERRIDES)]
        assert lines[0] == "algo(do, P, d) :- comb(P, do), dec(P, R, d)."
        assert all(line.startswith("algo(do, P, ") for line in lines)

    @pytest.mark.parametrize("algorithm", list(CombiningAlgorithm))
    def test_combining_rules_are_safe_and_guarded(self, algorithm):
        for combining_rule in transform_combining(algorithm):
            combining_rule.check_safety()
            assert f"comb(P, {algorithm.value})" in str(combining_rule)

    def test_first_applicable_uses_child_index(self):
        text = "\n".join(str(r) for r in transform_combining(CombiningAlgorithm.FIRST_APPLICABLE))
        assert "not blocked(P, I)" in text
        assert "J < I" in text

    def test_deterministic(self, minimal_case):
        store, domains = minimal_case
        first = serialize_program(transform_store(store, domains))
        second = serialize_program(transform_store(store, domains))
        assert first == second

    def test_fresh_identifiers_skip_component_ids(self):
        store, domains = load(
            "policyset ps1 = [null, <p1>, po]\n"
            "policy p1 = [null, <match_1>, po]\n"
            "rule match_1 = [permit, target(subject(doctor)), true]\n",
            MINIMAL_DOMAINS,
        )
        lines = _lines(transform_store(store, domains))
        assert "val(match_2, m) :- subject(doctor)." in lines
        assert "val(match_1, m) :- subject(doctor)." not in lines

    def test_condition_uses_relations(self, condition_case):
        store, domains = condition_case
        lines = _lines(transform_store(store, domains))
        assert "treats(doctor, alice)." in lines
        assert "consent(bob)." in lines
        assert "condition(cond_1)." in lines
        assert "eval(cond_1, t) :- treats(doctor, X), consent(X)." in lines
        assert "eval(C, f) :- condition(C), not eval(C, t)." in lines

    def test_negated_variable_gets_const_guard(self):
        store, domains = load(
            "policyset ps1 = [null, <p1>, po]\n"
            "policy p1 = [null, <r1>, po]\n"
            "rule r1 = [permit, null, cond(subject(X) and not consent(X))]\n",
            "subjects: doctor\nrelation consent: (doctor)\n",
        )
        lines = _lines(transform_store(store, domains))
        assert "eval(cond_1, t) :- subject(X), not consent(X)." in lines
        assert "const(doctor)." not in lines

    def test_disjunction_gets_auxiliary_predicate(self):
        store, domains = load(
            "policyset ps1 = [null, <p1>, po]\n"
            "policy p1 = [null, <r1>, po]\n"
            "rule r1 = [permit, null, cond(subject(doctor) or action(read))]\n",
            MINIMAL_DOMAINS,
        )
        lines = _lines(transform_store(store, domains))
        assert "holds_cond_1_1 :- subject(doctor)." in lines
        assert "holds_cond_1_1 :- action(read)." in lines
        assert "eval(cond_1, t) :- holds_cond_1_1." in lines

    def test_request_facts(self):
        domains = AttributeDomains.of(subject=["doctor"])
        request = Request.of({AttrCategory.SUBJECT: ["doctor", "visitor"]})
        assert _lines(transform_request(request, domains)) == [
            "subject(doctor).",
            "subject(visitor).",
            "const(visitor).",
        ]


# ==================== Analysis programs ====================


@pytest.mark.unit
class TestAnalysisPrograms:
    """Request generators and properties added for each analysis."""

    def test_generate_one_choice_rule(self, minimal_case):
        store, domains = minimal_case
        lines = _lines(emit_analysis(ProgramTask.GAP, store, domains))
        assert "1 { subject(X) : subject_db(X) } 1." in lines
        assert "1 { action(X) : action_db(X) } 1." in lines
        assert "subject_db(doctor)." in lines

    def test_gap_property(self, gap_case):
        store, domains = gap_case
        lines = _lines(emit_analysis(ProgramTask.GAP, store, domains))
        assert "gap :- val(ps1, na)." in lines
        assert ":- not gap." in lines

    def test_conflict_property(self, gap_case):
        store, domains = gap_case
        lines = _lines(emit_analysis(ProgramTask.CONFLICT, store, domains))
        assert "rule(r_doctor)." in lines
        assert ":- not conflict." in lines

    def test_reachability_uses_saturated_request(self, gap_case):
        store, domains = gap_case
        lines = _lines(emit_analysis(ProgramTask.REACHABILITY, store, domains))
        assert "subject(X) :- subject_db(X)." in lines
        assert ":- not not_reachable." in lines
        assert not any(line.startswith("1 {") for line in lines)

    def test_empty_referenced_domain(self):
        store, domains = load(GAP_POLICIES, "actions: read\n", check_domains=False)
        with pytest.raises(EmptyDomainException, match="subject"):
            emit_analysis(ProgramTask.GAP, store, domains)

    def test_empty_unreferenced_domain_is_skipped(self, caplog):
        domains = AttributeDomains.of(subject=["doctor"])
        with caplog.at_level(logging.WARNING, logger="xacml_analyzer.lp.emitter"):
            rules = generate_one(domains)
        assert len(rules) == 1
        assert "Skipping empty action domain" in caplog.text

    def test_eval_needs_request(self, minimal_case):
        store, domains = minimal_case
        with pytest.raises(ValueError):
            emit_program(ProgramTask.EVAL, store, domains)
        with pytest.raises(ValueError):
            emit_analysis(ProgramTask.EVAL, store, domains)

    def test_eval_program_appends_request(self, minimal_case):
        store, domains = minimal_case
        request = Request.of({AttrCategory.SUBJECT: ["doctor"]})
        lines = _lines(emit_program(ProgramTask.EVAL, store, domains, request))
        assert lines[-1] == "subject(doctor)."

    def test_eval_text_solves_like_in_memory_program(self, condition_case):
        store, domains = condition_case
        request = parse_request("{subject(doctor), action(read)}", domains)
        text = serialize_program(emit_program(ProgramTask.EVAL, store, domains, request))
        answer = solve_unique(ground(parse_program(text)))
        assert component_decisions(answer, store.ids()) == LPPipeline().evaluate(
            store, request, domains
        )

    @pytest.mark.parametrize("task", ANALYSIS_TASKS)
    def test_text_parses_back(self, task):
        store, domains = load(CONDITION_POLICIES, CONDITION_DOMAINS)
        program = emit_analysis(task, store, domains)
        assert list(parse_program(serialize_program(program))) == list(program)

    def test_reserved_word_token_is_quoted(self):
        store, domains = load(MINIMAL_POLICIES, RESERVED_WORD_DOMAINS)
        program = emit_analysis(ProgramTask.GAP, store, domains)
        lines = _lines(program)
        assert 'subject_db("not").' in lines
        assert "subject_db(not)." not in lines
        assert list(parse_program(serialize_program(program))) == list(program)

    def test_reserved_word_request_solves_from_text(self):
        store, domains = load(MINIMAL_POLICIES, RESERVED_WORD_DOMAINS)
        request = parse_request("{subject(not), action(read)}", domains)
        text = serialize_program(emit_program(ProgramTask.EVAL, store, domains, request))
        assert 'subject("not").' in text.splitlines()
        answer = solve_unique(ground(parse_program(text)))
        assert component_decisions(answer, store.ids()) == LPPipeline().evaluate(
            store, request, domains
        )


# ==================== Acyclicity ====================


@pytest.mark.property
class TestAcyclicity:
    """Every emitted program grounds to an acyclic program."""

    @settings(max_examples=200, deadline=None)
    @given(case=random_cases)
    def test_analysis_programs_are_acyclic(self, case):
        store, domains = case
        for task in ANALYSIS_TASKS:
            result = check_acyclic(ground(emit_analysis(task, store, domains)))
            assert result.is_acyclic, (task, result.cycle)

    @settings(max_examples=50, deadline=None)
    @given(case=random_cases)
    def test_level_mapping_verifies(self, case):
        store, domains = case
        program = ground(emit_analysis(ProgramTask.GAP, store, domains))
        result = check_acyclic(program)
        assert result.mapping.verify(program)

    def test_fixture_programs_are_acyclic(self):
        for policies, domains_text in [
            (MINIMAL_POLICIES, MINIMAL_DOMAINS),
            (GAP_POLICIES, GAP_DOMAINS),
            (CONDITION_POLICIES, CONDITION_DOMAINS),
        ]:
            store, domains = load(policies, domains_text)
            for task in ANALYSIS_TASKS:
                assert check_acyclic(ground(emit_analysis(task, store, domains))).is_acyclic
