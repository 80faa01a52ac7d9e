"""
Combining algorithms.

Each algorithm folds the ordered decisions of a container's children into
one decision.
"""

from typing import Callable, Dict, Sequence

from xacml_analyzer.models.enums import CombiningAlgorithm, Decision


def permit_overrides(decisions: Sequence[Decision]) -> Decision:
    """Any permit wins, then any deny, otherwise not applicable."""
    if Decision.PERMIT in decisions:
        return Decision.PERMIT
    if Decision.DENY in decisions:
        return Decision.DENY
    return Decision.NOT_APPLICABLE


def deny_overrides(decisions: Sequence[Decision]) -> Decision:
    """Any deny wins, then any permit, otherwise not applicable."""
    if Decision.DENY in decisions:
        return Decision.DENY
    if Decision.PERMIT in decisions:
        return Decision.PERMIT
    return Decision.NOT_APPLICABLE


def first_applicable(decisions: Sequence[Decision]) -> Decision:
    """The first decision other than not applicable."""
    for decision in decisions:
        if decision is not Decision.NOT_APPLICABLE:
            return decision
    return Decision.NOT_APPLICABLE


def only_one_applicable(decisions: Sequence[Decision]) -> Decision:
    """The single applicable decision, or not applicable if there are none or several."""
    applicable = [d for d in decisions if d is not Decision.NOT_APPLICABLE]
    if len(applicable) == 1:
        return applicable[0]
    return Decision.NOT_APPLICABLE


COMBINING_FUNCTIONS: Dict[CombiningAlgorithm, Callable[[Sequence[Decision]], Decision]] = {
    CombiningAlgorithm.PERMIT_OVERRIDES: permit_overrides,
    CombiningAlgorithm.DENY_OVERRIDES: deny_overrides,
    CombiningAlgorithm.FIRST_APPLICABLE: first_applicable,
    CombiningAlgorithm.ONLY_ONE_APPLICABLE: only_one_applicable,
}


def combine(algorithm: CombiningAlgorithm, decisions: Sequence[Decision]) -> Decision:
    """
    Combine children's decisions with the given algorithm.

    Args:
        algorithm: Combining algorithm
        decisions: Children's decisions in child order

    Returns:
        The combined decision; an empty sequence combines to not applicable

    Examples:
        >>> combine(CombiningAlgorithm.DENY_OVERRIDES, [Decision.PERMIT, Decision.DENY])
        <Decision.DENY: 'd'>
    """
    return COMBINING_FUNCTIONS[algorithm](decisions)
