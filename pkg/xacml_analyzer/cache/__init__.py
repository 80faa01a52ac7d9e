"""
Caching module for the XACML analyzer.
"""

from xacml_analyzer.cache.program_cache import ProgramCache

__all__ = ["ProgramCache"]
