"""
Parsers and serializers for the policy, domain and request file formats.
"""

from xacml_analyzer.parser.domains_parser import parse_domains
from xacml_analyzer.parser.policy_parser import parse_policy_file
from xacml_analyzer.parser.request_parser import parse_request
from xacml_analyzer.parser.serializer import (
    serialize,
    serialize_domains,
    serialize_request,
    serialize_store,
)

__all__ = [
    "parse_policy_file",
    "parse_domains",
    "parse_request",
    "serialize",
    "serialize_store",
    "serialize_request",
    "serialize_domains",
]
