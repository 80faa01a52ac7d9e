"""
Configuration module for the XACML analyzer.
"""

from xacml_analyzer.config.analyzer_config import AnalyzerConfig, AnalyzerConfigBuilder
from xacml_analyzer.config.run_config import RunConfig

__all__ = [
    "AnalyzerConfig",
    "AnalyzerConfigBuilder",
    "RunConfig",
]
