"""
Reporting module for the XACML analyzer.
"""

from xacml_analyzer.reporting.report_renderer import ReportRenderer, describe_witness

__all__ = [
    "ReportRenderer",
    "describe_witness",
]
