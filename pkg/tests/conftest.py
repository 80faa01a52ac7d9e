"""
Shared test fixtures for the XACML analyzer tests.

Fixtures are written in the policy and domain file syntax so that each
test reads like the files a user would analyse.
"""

from typing import Optional

import pytest

from xacml_analyzer.models.store import build_store
from xacml_analyzer.parser.domains_parser import parse_domains
from xacml_analyzer.parser.policy_parser import parse_policy_file


def load(policies: str, domains: Optional[str] = None, check_domains: bool = True):
    """Parse policy and domain texts into a (store, domains) pair."""
    parsed_domains = parse_domains(domains or "")
    store = build_store(
        parse_policy_file(policies), parsed_domains if check_domains else None
    )
    return store, parsed_domains


# ==================== Minimal store ====================

MINIMAL_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r1>, po]
rule r1 = [permit, target(subject(doctor)), true]
"""

MINIMAL_DOMAINS = """\
subjects: doctor, nurse
actions: read
"""

# ==================== Gap fixtures ====================

GAP_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r_doctor>, fa]
rule r_doctor = [permit, target(subject(doctor)), true]
"""

COMPLETE_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r_doctor, r_nurse>, fa]
rule r_doctor = [permit, target(subject(doctor)), true]
rule r_nurse = [deny, target(subject(nurse)), true]
"""

GAP_DOMAINS = """\
subjects: doctor, nurse
actions: read, write
resources: record
"""

# ==================== Conflict fixtures ====================

CONFLICT_POLICIES = """\
policyset ps1 = [null, <p1>, fa]
policy p1 = [null, <r1, r2>, po]
rule r1 = [permit, null, true]
rule r2 = [deny, null, true]
"""

ALL_PERMIT_POLICIES = """\
policyset ps1 = [null, <p1>, fa]
policy p1 = [null, <r1, r2>, po]
rule r1 = [permit, null, true]
rule r2 = [permit, target(subject(nurse)), true]
"""

# ==================== Reachability fixtures ====================

REACHABILITY_DOMAINS = """\
subjects: doctor, nurse
actions: read, write
"""

ALWAYS_NA_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r_ok, r_ghost>, po]
rule r_ok = [permit, null, true]
rule r_ghost = [permit, target(subject(ghost)), true]
"""

PO_SHADOWED_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r_p, r_d>, po]
rule r_p = [permit, null, true]
rule r_d = [deny, target(action(write)), true]
"""

DO_SHADOWED_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r_d, r_p>, do]
rule r_d = [deny, null, true]
rule r_p = [permit, target(subject(doctor)), true]
"""

OOA_SHADOWED_POLICIES = """\
policyset ps1 = [null, <p1, p2>, fa]
policy p1 = [null, <r1, r2, r3>, ooa]
rule r1 = [permit, null, true]
rule r2 = [deny, null, true]
rule r3 = [permit, null, true]
policy p2 = [null, <r_ok>, po]
rule r_ok = [permit, target(subject(doctor)), true]
"""

FA_SHADOWED_POLICIES = """\
policyset ps1 = [null, <p1>, po]
policy p1 = [null, <r_first, r_later>, fa]
rule r_first = [permit, null, true]
rule r_later = [deny, target(subject(doctor)), true]
"""

# Fixture name -> (policies, rules expected unreachable, reason value, checks domains)
REACHABILITY_CASES = {
    "always_na": (ALWAYS_NA_POLICIES, ["r_ghost"], "always_na", False),
    "po_shadowed": (PO_SHADOWED_POLICIES, ["r_d"], "po_shadowed", True),
    "do_shadowed": (DO_SHADOWED_POLICIES, ["r_p"], "do_shadowed", True),
    "ooa_shadowed": (OOA_SHADOWED_POLICIES, ["r1", "r2", "r3"], "ooa_shadowed", True),
    "fa_shadowed": (FA_SHADOWED_POLICIES, ["r_later"], "fa_shadowed", True),
}

# ==================== Conditions ====================

CONDITION_POLICIES = """\
policyset ps1 = [null, <p1>, fa]
policy p1 = [target(action(read)), <r_consent, r_default>, fa]
rule r_consent = [permit, target(subject(doctor)), cond(treats(doctor, X) and consent(X))]
rule r_default = [deny, null, true]
"""

CONDITION_DOMAINS = """\
subjects: doctor, nurse
actions: read, write
relation treats: (doctor, alice), (doctor, bob)
relation consent: (bob)
"""


@pytest.fixture
def minimal_case():
    """Single permit rule for doctors."""
    return load(MINIMAL_POLICIES, MINIMAL_DOMAINS)


@pytest.fixture
def gap_case():
    """Root covering doctors only, over doctor and nurse."""
    return load(GAP_POLICIES, GAP_DOMAINS)


@pytest.fixture
def complete_case():
    """The gap fixture with a rule added for nurses."""
    return load(COMPLETE_POLICIES, GAP_DOMAINS)


@pytest.fixture
def conflict_case():
    """An always-applicable permit and deny pair."""
    return load(CONFLICT_POLICIES, GAP_DOMAINS)


@pytest.fixture
def condition_case():
    """A rule whose condition joins two relations."""
    return load(CONDITION_POLICIES, CONDITION_DOMAINS)


@pytest.fixture(params=sorted(REACHABILITY_CASES))
def reachability_case(request):
    """One fixture per unreachability clause: (store, domains, expected rules, reason)."""
    policies, expected, reason, check_domains = REACHABILITY_CASES[request.param]
    store, domains = load(policies, REACHABILITY_DOMAINS, check_domains)
    return store, domains, expected, reason
