"""
Command-line interface for the XACML analyzer.

``main`` is not re-exported: the name belongs to the submodule.
"""

from xacml_analyzer.cli.main import ExitCode, build_parser, run

__all__ = [
    "ExitCode",
    "build_parser",
    "run",
]
