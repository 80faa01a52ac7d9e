"""
Cachetools-based cache of ground programs.

Grounding dominates the cost of the logic-program engine, and analyses
of the same store and domains repeat it; this cache keeps recently
grounded programs keyed by the fingerprints of their inputs.
"""

import logging
import threading
import time
from typing import Callable, Hashable, Optional, Tuple

from cachetools import LRUCache

from xacml_analyzer.engine.ground_program import GroundProgram
from xacml_analyzer.metrics.cache_metrics import CacheMetrics

logger = logging.getLogger(__name__)

ProgramKey = Tuple[str, str, Hashable]
"""(store fingerprint, domains fingerprint, task discriminator)"""


class ProgramCache:
    """
    Thread-safe LRU cache of ground programs.

    Attributes:
        metrics: Cache performance metrics

    Examples:
        >>> cache = ProgramCache(maxsize=32)
        >>> key = (store.fingerprint(), domains.fingerprint(), "gap")
        >>> program = cache.get_or_ground(key, lambda: ground(emit_analysis(...)))
    """

    def __init__(self, maxsize: int = 32) -> None:
        """
        Create a new program cache.

        Args:
            maxsize: Maximum number of ground programs kept; 0 disables caching
        """
        self._lock = threading.RLock()
        self._enabled = maxsize > 0
        self._cache: LRUCache = LRUCache(maxsize=max(maxsize, 1))
        self.metrics = CacheMetrics()
        logger.debug("ProgramCache initialized with max size: %d", maxsize)

    def get(self, key: ProgramKey) -> Optional[GroundProgram]:
        """
        Retrieve a ground program.

        Args:
            key: Cache key

        Returns:
            The cached program, or None
        """
        with self._lock:
            result = self._cache.get(key) if self._enabled else None
            if result is None:
                self.metrics.record_miss()
                logger.debug("Program cache miss for key: %s", key[2])
            else:
                self.metrics.record_hit()
                logger.debug("Program cache hit for key: %s", key[2])
            return result

    def put(self, key: ProgramKey, program: GroundProgram) -> None:
        """
        Store a ground program.

        Args:
            key: Cache key
            program: Program to cache
        """
        if not self._enabled:
            return
        with self._lock:
            if len(self._cache) >= self._cache.maxsize and key not in self._cache:
                self.metrics.record_eviction()
            self._cache[key] = program

    def get_or_ground(
        self, key: ProgramKey, factory: Callable[[], GroundProgram]
    ) -> GroundProgram:
        """
        Return the cached program or build, cache and return it.

        Args:
            key: Cache key
            factory: Builds the program on a miss

        Returns:
            The ground program
        """
        cached = self.get(key)
        if cached is not None:
            return cached
        start = time.perf_counter()
        program = factory()
        self.metrics.record_load((time.perf_counter() - start) * 1000)
        self.put(key, program)
        return program

    def clear(self) -> None:
        """Remove every entry."""
        with self._lock:
            self._cache.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)
