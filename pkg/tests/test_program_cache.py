"""
Tests for the ground-program cache and the metrics counters.
"""

import threading

import pytest

from xacml_analyzer.cache.program_cache import ProgramCache
from xacml_analyzer.engine.grounder import ground
from xacml_analyzer.lp.lp_parser import parse_program
from xacml_analyzer.metrics.cache_metrics import CacheMetrics
from xacml_analyzer.metrics.engine_metrics import EngineMetrics

pytestmark = pytest.mark.unit

PROGRAM = ground(parse_program("p(a). q(X) :- p(X)."))


class TestProgramCache:
    """LRU behaviour and counters."""

    def test_miss_then_hit(self):
        cache = ProgramCache(maxsize=2)
        calls = []

        def factory():
            calls.append(1)
            return PROGRAM

        key = ("store", "domains", "gap")
        assert cache.get_or_ground(key, factory) is PROGRAM
        assert cache.get_or_ground(key, factory) is PROGRAM
        assert len(calls) == 1
        assert cache.metrics.hits == 1
        assert cache.metrics.misses == 1
        assert cache.metrics.load_count == 1

    def test_eviction(self):
        cache = ProgramCache(maxsize=1)
        cache.put(("s", "d", "gap"), PROGRAM)
        cache.put(("s", "d", "conflict"), PROGRAM)
        assert len(cache) == 1
        assert cache.metrics.evictions == 1
        assert cache.get(("s", "d", "gap")) is None

    def test_disabled(self):
        cache = ProgramCache(maxsize=0)
        cache.put(("s", "d", "gap"), PROGRAM)
        assert len(cache) == 0
        assert cache.get(("s", "d", "gap")) is None

    def test_clear(self):
        cache = ProgramCache()
        cache.put(("s", "d", "gap"), PROGRAM)
        cache.clear()
        assert len(cache) == 0

    def test_concurrent_access(self):
        cache = ProgramCache(maxsize=4)

        def worker():
            for _ in range(50):
                cache.get_or_ground(("s", "d", "gap"), lambda: PROGRAM)

        threads = [threading.Thread(target=worker) for _ in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert cache.metrics.hits + cache.metrics.misses == 200


class TestMetrics:
    """Counter snapshots."""

    def test_cache_metrics(self):
        metrics = CacheMetrics()
        metrics.record_hit()
        metrics.record_miss()
        metrics.record_load(4.0)
        snapshot = metrics.to_dict()
        assert snapshot["hit_rate"] == 0.5
        assert snapshot["average_load_time_ms"] == 4.0

    def test_empty_cache_metrics(self):
        metrics = CacheMetrics()
        assert metrics.get_hit_rate() == 0.0
        assert metrics.get_average_load_time() == 0.0

    def test_engine_metrics(self):
        metrics = EngineMetrics()
        metrics.record_grounding(rules=3, atoms=2)
        metrics.record_solve()
        metrics.record_candidate(accepted=True)
        metrics.record_candidate(accepted=False)
        assert metrics.to_dict() == {
            "groundings": 1,
            "ground_rules": 3,
            "ground_atoms": 2,
            "solves": 1,
            "candidates": 2,
            "models": 1,
        }
