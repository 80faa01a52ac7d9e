"""
Metrics module for the XACML analyzer.

This module provides counters for the engine and the program cache.
"""

from xacml_analyzer.metrics.cache_metrics import CacheMetrics
from xacml_analyzer.metrics.engine_metrics import EngineMetrics

__all__ = [
    "CacheMetrics",
    "EngineMetrics",
]
