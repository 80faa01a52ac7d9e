"""
Engine metrics module.

Counts the work done by the grounder and the solver so that reports can
show how large the analysed programs were.
"""

import threading
from typing import Any, Dict


class EngineMetrics:
    """
    Counters for grounding and solving.

    All methods are thread-safe.
    """

    def __init__(self) -> None:
        """Initialize engine metrics with zero counters."""
        self._lock = threading.Lock()
        self._groundings = 0
        self._ground_rules = 0
        self._ground_atoms = 0
        self._solves = 0
        self._candidates = 0
        self._models = 0

    def record_grounding(self, rules: int, atoms: int) -> None:
        """
        Record one grounded program.

        Args:
            rules: Number of ground rules produced
            atoms: Number of atoms in the atom table
        """
        with self._lock:
            self._groundings += 1
            self._ground_rules += rules
            self._ground_atoms += atoms

    def record_solve(self) -> None:
        """Record one level-ordered model computation."""
        with self._lock:
            self._solves += 1

    def record_candidate(self, accepted: bool) -> None:
        """
        Record one choice selection checked during model enumeration.

        Args:
            accepted: Whether the selection yielded an answer set
        """
        with self._lock:
            self._candidates += 1
            if accepted:
                self._models += 1

    @property
    def groundings(self) -> int:
        """Get the number of grounded programs."""
        with self._lock:
            return self._groundings

    @property
    def solves(self) -> int:
        """Get the number of model computations."""
        with self._lock:
            return self._solves

    @property
    def models(self) -> int:
        """Get the number of accepted answer sets."""
        with self._lock:
            return self._models

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert metrics to dictionary format.

        Returns:
            Dictionary containing all metrics
        """
        with self._lock:
            return {
                "groundings": self._groundings,
                "ground_rules": self._ground_rules,
                "ground_atoms": self._ground_atoms,
                "solves": self._solves,
                "candidates": self._candidates,
                "models": self._models,
            }

    def __str__(self) -> str:
        """Return string representation of metrics."""
        return (
            f"EngineMetrics(groundings={self.groundings}, solves={self.solves}, "
            f"models={self.models})"
        )
