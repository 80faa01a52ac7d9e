"""
Tests for the combining algorithms.

Every decision vector of length up to six is checked against the
defining law of each algorithm, on the native functions and, for short
vectors, through the logic-program engine.
"""

import itertools
from typing import List, Sequence

import pytest

from xacml_analyzer.analyzer.lp_pipeline import LPPipeline
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import AttrCategory, CombiningAlgorithm, Decision, Effect
from xacml_analyzer.models.policy import Policy, PolicySet, Rule
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore, build_store
from xacml_analyzer.pdp.combining import (
    combine,
    deny_overrides,
    first_applicable,
    only_one_applicable,
    permit_overrides,
)
from xacml_analyzer.pdp.evaluator import trace

P, D, NA = Decision.PERMIT, Decision.DENY, Decision.NOT_APPLICABLE

MAX_LENGTH = 6
LP_MAX_LENGTH = 3


def all_vectors(max_length: int) -> List[Sequence[Decision]]:
    return [
        vector
        for length in range(max_length + 1)
        for vector in itertools.product(list(Decision), repeat=length)
    ]


VECTORS = all_vectors(MAX_LENGTH)


# ==================== Laws ====================


@pytest.mark.unit
class TestCombiningLaws:
    """Each algorithm against its defining law over every vector."""

    def test_vector_count(self):
        assert len(VECTORS) == sum(3**k for k in range(MAX_LENGTH + 1))

    def test_permit_overrides(self):
        for vector in VECTORS:
            if P in vector:
                expected = P
            elif D in vector:
                expected = D
            else:
                expected = NA
            assert permit_overrides(vector) is expected, vector

    def test_deny_overrides(self):
        for vector in VECTORS:
            if D in vector:
                expected = D
            elif P in vector:
                expected = P
            else:
                expected = NA
            assert deny_overrides(vector) is expected, vector

    def test_first_applicable(self):
        for vector in VECTORS:
            applicable = [d for d in vector if d is not NA]
            expected = applicable[0] if applicable else NA
            assert first_applicable(vector) is expected, vector

    def test_only_one_applicable(self):
        for vector in VECTORS:
            applicable = [d for d in vector if d is not NA]
            expected = applicable[0] if len(applicable) == 1 else NA
            assert only_one_applicable(vector) is expected, vector

    @pytest.mark.parametrize("algorithm", list(CombiningAlgorithm))
    def test_empty_vector_is_not_applicable(self, algorithm):
        assert combine(algorithm, []) is NA

    @pytest.mark.parametrize("algorithm", list(CombiningAlgorithm))
    def test_not_applicable_children_are_neutral(self, algorithm):
        for vector in all_vectors(4):
            padded = list(vector) + [NA]
            assert combine(algorithm, padded) is combine(algorithm, vector), vector

    @pytest.mark.parametrize(
        "algorithm",
        [
            CombiningAlgorithm.PERMIT_OVERRIDES,
            CombiningAlgorithm.DENY_OVERRIDES,
            CombiningAlgorithm.ONLY_ONE_APPLICABLE,
        ],
    )
    def test_order_independent_algorithms(self, algorithm):
        for vector in all_vectors(4):
            results = {combine(algorithm, perm) for perm in itertools.permutations(vector)}
            assert len(results) == 1, vector

    def test_first_applicable_depends_on_order(self):
        assert combine(CombiningAlgorithm.FIRST_APPLICABLE, [P, D]) is P
        assert combine(CombiningAlgorithm.FIRST_APPLICABLE, [D, P]) is D


# ==================== Engine agreement ====================


def vector_store(algorithm: CombiningAlgorithm, vector: Sequence[Decision]) -> PolicyStore:
    """
    A policy whose rules decide the given vector for the request {subject(doctor)}.

    Not-applicable rules target a subject the request does not carry.
    """
    rules = []
    for index, decision in enumerate(vector, start=1):
        builder = Rule.builder().id(f"r{index}")
        if decision is NA:
            builder.match(AttrCategory.SUBJECT, "ghost")
        else:
            builder.effect(Effect.PERMIT if decision is P else Effect.DENY)
        rules.append(builder.build())
    policy = (
        Policy.builder()
        .id("p1")
        .children(*(rule.id for rule in rules))
        .algorithm(algorithm)
        .build()
    )
    policy_set = PolicySet.builder().id("ps1").children("p1").build()
    return build_store([policy_set, policy, *rules])


@pytest.mark.slow
class TestCombiningEngines:
    """The logic-program encoding of each algorithm agrees with the native one."""

    REQUEST = Request.of({AttrCategory.SUBJECT: ["doctor"]})
    DOMAINS = AttributeDomains.of(subject=["doctor", "ghost"])

    @pytest.mark.parametrize("algorithm", list(CombiningAlgorithm))
    def test_lp_matches_native(self, algorithm):
        pipeline = LPPipeline()
        for vector in all_vectors(LP_MAX_LENGTH):
            if not vector:
                continue
            store = vector_store(algorithm, vector)
            native = trace(store, self.REQUEST, self.DOMAINS)
            assert native["p1"] is combine(algorithm, vector)
            assert pipeline.evaluate(store, self.REQUEST, self.DOMAINS) == native, vector
