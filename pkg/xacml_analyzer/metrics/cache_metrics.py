"""Lookup and grounding counters of the program cache."""

import threading
from collections import Counter
from typing import Any, Dict


class CacheMetrics:
    """
    Thread-safe counters for a ProgramCache.

    A load is one grounding performed because a lookup missed; its wall
    time is accumulated so that the average cost of a miss can be reported
    next to the hit rate.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._counts: Counter = Counter()
        self._load_ms = 0.0

    def _bump(self, name: str) -> None:
        with self._lock:
            self._counts[name] += 1

    def record_hit(self) -> None:
        self._bump("hits")

    def record_miss(self) -> None:
        self._bump("misses")

    def record_eviction(self) -> None:
        self._bump("evictions")

    def record_load(self, load_time_ms: float) -> None:
        """
        Record one grounding triggered by a miss.

        Args:
            load_time_ms: Grounding wall time in milliseconds
        """
        with self._lock:
            self._counts["load_count"] += 1
            self._load_ms += load_time_ms

    def get_hit_rate(self) -> float:
        """Share of lookups served from the cache, 0.0 before any lookup."""
        with self._lock:
            lookups = self._counts["hits"] + self._counts["misses"]
            return self._counts["hits"] / lookups if lookups else 0.0

    def get_average_load_time(self) -> float:
        """Mean grounding time per load in milliseconds."""
        with self._lock:
            loads = self._counts["load_count"]
            return self._load_ms / loads if loads else 0.0

    @property
    def hits(self) -> int:
        with self._lock:
            return self._counts["hits"]

    @property
    def misses(self) -> int:
        with self._lock:
            return self._counts["misses"]

    @property
    def evictions(self) -> int:
        with self._lock:
            return self._counts["evictions"]

    @property
    def load_count(self) -> int:
        with self._lock:
            return self._counts["load_count"]

    def to_dict(self) -> Dict[str, Any]:
        with self._lock:
            snapshot: Dict[str, Any] = {
                name: self._counts[name] for name in ("hits", "misses", "evictions", "load_count")
            }
            load_ms = self._load_ms
        lookups = snapshot["hits"] + snapshot["misses"]
        snapshot["hit_rate"] = snapshot["hits"] / lookups if lookups else 0.0
        loads = snapshot["load_count"]
        snapshot["average_load_time_ms"] = load_ms / loads if loads else 0.0
        return snapshot

    def __str__(self) -> str:
        return (
            f"CacheMetrics(hits={self.hits}, misses={self.misses}, "
            f"loads={self.load_count}, hit_rate={self.get_hit_rate():.2%})"
        )
