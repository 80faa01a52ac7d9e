"""
Tests for the policy, domain and request parsers and the serializers.
"""

import pytest
from hypothesis import given, settings

from xacml_analyzer.exception.exceptions import (
    DomainFileException,
    ErrorCode,
    PolicySyntaxException,
    PolicyValidationException,
    RequestFileException,
)
from xacml_analyzer.models.condition import (
    MAX_CONDITION_DEPTH,
    AndExpr,
    NotExpr,
    OrExpr,
    PredicateLeaf,
    expr_depth,
)
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory, CombiningAlgorithm, Effect
from xacml_analyzer.models.policy import Policy, PolicySet, Rule
from xacml_analyzer.models.request import Fact, Request
from xacml_analyzer.models.store import build_store
from xacml_analyzer.models.terms import Variable
from xacml_analyzer.parser import (
    parse_domains,
    parse_policy_file,
    parse_request,
    serialize,
    serialize_store,
)
from xacml_analyzer.parser.serializer import serialize_components

from tests.conftest import CONDITION_DOMAINS, CONDITION_POLICIES, GAP_DOMAINS, load
from tests.policy_generators import random_cases


def _components(text: str):
    return [parsed.component for parsed in parse_policy_file(text)]


# ==================== Policy files ====================


@pytest.mark.unit
class TestPolicyParser:
    """Parsing well-formed policy text."""

    def test_parses_every_component_kind(self):
        policy_set, policy, rule = _components(
            """
            policyset ps1 = [null, <p1>, do]
            policy p1 = [target(subject(doctor)), <r1>, fa]
            rule r1 = [deny, null, true]
            """
        )
        assert isinstance(policy_set, PolicySet)
        assert policy_set.algorithm is CombiningAlgorithm.DENY_OVERRIDES
        assert isinstance(policy, Policy)
        assert policy.children == ("r1",)
        assert isinstance(rule, Rule)
        assert rule.effect is Effect.DENY

    def test_bare_and_parenthesized_anyofs(self):
        (rule,) = _components(
            "rule r1 = [permit, target(subject(doctor) | subject(nurse), "
            "(action(read) & resource(record))), true]"
        )
        first, second = rule.target.anyofs
        assert len(first.allofs) == 2
        assert [str(m) for m in second.allofs[0].matches] == ["action(read)", "resource(record)"]

    def test_condition_operators(self):
        (rule,) = _components(
            "rule r1 = [permit, null, cond(treats(doctor, X) and not consent(X) or X == bob)]"
        )
        expr = rule.condition.expr
        assert isinstance(expr, OrExpr)
        conjunction, comparison = expr.operands
        assert isinstance(conjunction, AndExpr)
        assert isinstance(conjunction.operands[1], NotExpr)
        assert comparison.right == "bob"
        assert rule.condition.variables() == [Variable(name="X")]

    def test_negation_chain_keeps_every_level(self):
        (rule,) = _components("rule r1 = [permit, null, cond(not not not subject(a))]")
        expr = rule.condition.expr
        for _ in range(3):
            assert isinstance(expr, NotExpr)
            expr = expr.operand
        assert expr == PredicateLeaf(name="subject", args=("a",))

    def test_predicate_name_starting_with_not(self):
        (rule,) = _components("rule r1 = [permit, null, cond(notified(X))]")
        assert rule.condition.expr.name == "notified"

    def test_negation_chain_at_depth_limit(self):
        negations = "not " * (MAX_CONDITION_DEPTH - 1)
        (rule,) = _components(f"rule r1 = [permit, null, cond({negations}subject(a))]")
        assert expr_depth(rule.condition.expr) == MAX_CONDITION_DEPTH

    def test_integer_terms(self):
        (rule,) = _components("rule r1 = [permit, null, cond(patient_id(5))]")
        assert rule.condition.expr == PredicateLeaf(name="patient_id", args=(5,))

    def test_comments_and_whitespace(self):
        components = _components(
            "# staff policies\n"
            "policyset ps1 = [null, <p1>, po]   # root\n"
            "\n"
            "policy p1 = [null, <r1>, po]\n"
            "rule r1 = [permit, null, true]\n"
        )
        assert [c.id for c in components] == ["ps1", "p1", "r1"]

    def test_spans_carry_source(self):
        parsed = parse_policy_file(
            "policyset ps1 = [null, <p1>, po]\n"
            "policy p1 = [null, <r1>, po]\n"
            "rule r1 = [permit, null, true]\n",
            source="staff.pol",
        )
        assert str(parsed[2].span) == "staff.pol:3:1"

    def test_empty_file(self):
        assert parse_policy_file("") == []

    def test_condition_fixture_builds(self):
        store, domains = load(CONDITION_POLICIES, CONDITION_DOMAINS)
        rule = store.get("r_consent")
        assert rule.condition.predicate_names() == {"treats", "consent"}
        assert domains.relation("treats") == (("doctor", "alice"), ("doctor", "bob"))


# ==================== Policy syntax errors ====================


@pytest.mark.unit
class TestPolicySyntaxErrors:
    """Malformed policy text is reported with a location and expected tokens."""

    def test_missing_condition(self):
        with pytest.raises(PolicySyntaxException) as exc_info:
            parse_policy_file("rule r1 = [permit, null]")
        error = exc_info.value
        assert error.error_code is ErrorCode.POLICY_SYNTAX
        assert error.span.line == 1
        assert error.span.column == 24
        assert error.expected == ['","']

    def test_error_on_later_line(self):
        with pytest.raises(PolicySyntaxException) as exc_info:
            parse_policy_file("rule r1 = [permit, null, true]\nrule r2 = permit\n")
        assert exc_info.value.span.line == 2
        assert '"["' in exc_info.value.expected

    def test_unexpected_end_of_input(self):
        with pytest.raises(PolicySyntaxException, match="end of input"):
            parse_policy_file("policy p1 = [null, <r1")

    def test_unknown_algorithm(self):
        with pytest.raises(PolicySyntaxException, match="unknown combining algorithm 'xx'") as exc:
            parse_policy_file("policy p1 = [null, <r1>, xx]")
        assert exc.value.expected == ["do", "fa", "ooa", "po"]

    def test_unknown_effect(self):
        with pytest.raises(PolicySyntaxException, match="unknown effect 'allow'") as exc_info:
            parse_policy_file("rule r1 = [allow, null, true]")
        assert exc_info.value.span.column == 12

    def test_unknown_category(self):
        with pytest.raises(PolicySyntaxException, match="unknown attribute category 'user'"):
            parse_policy_file("rule r1 = [permit, target(user(bob)), true]")

    @pytest.mark.parametrize("negations", [MAX_CONDITION_DEPTH, 1000, 5000])
    def test_deep_negation_rejected(self, negations):
        text = "rule r1 = [permit, null, cond(" + "not " * negations + "subject(a))]"
        with pytest.raises(PolicySyntaxException, match="nested deeper than") as info:
            parse_policy_file(text, source="deep.pol")
        assert info.value.error_code is ErrorCode.POLICY_SYNTAX

    def test_deep_parenthesized_condition_rejected(self):
        depth = 1000
        text = "subject(a)"
        for _ in range(depth):
            text = f"(subject(a) and {text})"
        with pytest.raises(PolicySyntaxException, match="nested deeper than"):
            parse_policy_file(f"rule r1 = [permit, null, cond({text})]")

    def test_deep_redundant_parentheses_parse(self):
        text = "(" * 5000 + "subject(a)" + ")" * 5000
        (rule,) = _components(f"rule r1 = [permit, null, cond({text})]")
        assert expr_depth(rule.condition.expr) == 1

    def test_span_in_message(self):
        with pytest.raises(PolicySyntaxException, match="staff.pol:1:"):
            parse_policy_file("rule r1 = [permit null true]", source="staff.pol")

    def test_duplicate_definition_reports_both_locations(self):
        parsed = parse_policy_file(
            "policyset ps = [null, <p1>, po]\n"
            "policy p1 = [null, <r1>, po]\n"
            "rule r1 = [permit, null, true]\n"
            "rule r1 = [deny, null, true]\n"
        )
        with pytest.raises(PolicyValidationException, match="first defined at 3:1, again at 4:1"):
            build_store(parsed)


# ==================== Domain files ====================


@pytest.mark.unit
class TestDomainsParser:
    """Parsing attribute-domain files."""

    def test_sections_and_relations(self):
        domains = parse_domains(
            "subjects: nurse, doctor\n"
            "actions: read\n"
            "relation patient_id: (7), (5), (7)\n"
            "relation treats: (doctor, alice)\n"
        )
        assert domains.tokens(AttrCategory.SUBJECT) == ("doctor", "nurse")
        assert domains.tokens(AttrCategory.RESOURCE) == ()
        assert domains.relation("patient_id") == ((5,), (7,))
        assert domains.relation_arity("treats") == 2

    def test_empty_file_declares_empty_domains(self):
        assert parse_domains("") == AttributeDomains()

    def test_duplicate_token(self):
        with pytest.raises(DomainFileException, match="duplicate token 'doctor'"):
            parse_domains("subjects: doctor, doctor")

    def test_empty_section(self):
        with pytest.raises(DomainFileException, match="lists no values"):
            parse_domains("subjects:\nactions: read")

    def test_repeated_section(self):
        with pytest.raises(DomainFileException, match="declared twice"):
            parse_domains("subjects: doctor\nsubjects: nurse")

    def test_reserved_relation(self):
        with pytest.raises(DomainFileException, match="reserved"):
            parse_domains("relation val: (x)")

    def test_mixed_arity(self):
        with pytest.raises(DomainFileException, match="mixes arities"):
            parse_domains("relation treats: (doctor, alice), (bob)")

    def test_syntax_error(self):
        with pytest.raises(PolicySyntaxException):
            parse_domains("subjects doctor")


# ==================== Requests ====================


@pytest.mark.unit
class TestRequestParser:
    """Parsing request files."""

    def test_category_facts(self):
        request = parse_request("{subject(doctor), action(read), subject(doctor)}")
        assert request == Request.of(
            {AttrCategory.SUBJECT: ["doctor"], AttrCategory.ACTION: ["read"]}
        )

    def test_empty_request(self):
        assert parse_request("{}") == Request()

    def test_external_facts_need_declared_relation(self):
        domains = parse_domains("relation patient_id: (5), (7)")
        request = parse_request("{subject(doctor), patient_id(5)}", domains)
        assert Fact.of("patient_id", 5) in request.facts
        with pytest.raises(RequestFileException, match="unknown category 'patient_id'"):
            parse_request("{patient_id(5)}")

    def test_relation_arity_checked(self):
        domains = parse_domains("relation treats: (doctor, alice)")
        with pytest.raises(RequestFileException, match="arity 2"):
            parse_request("{treats(doctor)}", domains)

    def test_category_takes_one_token(self):
        with pytest.raises(RequestFileException, match="takes one token"):
            parse_request("{subject(5)}")

    def test_syntax_error(self):
        with pytest.raises(PolicySyntaxException) as exc_info:
            parse_request("{subject(doctor)")
        assert "end of input" in str(exc_info.value)


# ==================== Serialization ====================


@pytest.mark.unit
class TestSerializer:
    """Canonical rendering of stores, requests and domains."""

    def test_store_in_preorder(self):
        store, _ = load(
            "rule r1 = [permit, target(subject(doctor) | subject(nurse)), true]\n"
            "policy p1 = [null, <r1>, po]\n"
            "policyset ps1 = [null, <p1>, fa]\n",
            GAP_DOMAINS,
        )
        assert serialize_store(store) == (
            "policyset ps1 = [null, <p1>, fa]\n"
            "policy p1 = [null, <r1>, po]\n"
            "rule r1 = [permit, target((subject(doctor) | subject(nurse))), true]\n"
        )

    def test_nested_condition_parenthesized(self):
        text = "rule r1 = [permit, null, cond(not (subject(a) and action(b)) or resource(c))]\n"
        (rule,) = _components(text)
        assert serialize_components([rule]) == text

    def test_request_and_domains(self):
        request = parse_request("{action(read), subject(doctor)}")
        assert serialize(request) == "{subject(doctor), action(read)}\n"
        domains = parse_domains("actions: write, read\nsubjects: nurse\n")
        assert serialize(domains) == "subjects: nurse\nactions: read, write\n"

    def test_unsupported_value(self):
        with pytest.raises(TypeError):
            serialize(42)


# ==================== Round trip ====================


@pytest.mark.property
class TestRoundTrip:
    """Serialized stores parse back to equal stores."""

    @settings(max_examples=1000, deadline=None)
    @given(case=random_cases)
    def test_store_round_trip(self, case):
        store, domains = case
        text = serialize_store(store)
        reparsed = build_store(parse_policy_file(text), domains)
        assert reparsed == store
        assert serialize_store(reparsed) == text

    @settings(max_examples=100, deadline=None)
    @given(case=random_cases)
    def test_domains_round_trip(self, case):
        _, domains = case
        assert parse_domains(serialize(domains)) == domains
