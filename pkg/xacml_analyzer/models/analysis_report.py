"""
Analysis report model.

Collects the witnesses of one analysis run together with the identity of
the analysed store and domains.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from xacml_analyzer.models.enums import AnalysisTask, Engine
from xacml_analyzer.models.witness import Witness

REPORT_VERSION = "1.0"


class AnalysisReport(BaseModel):
    """
    Outcome of a gap, conflict or reachability analysis.

    Attributes:
        version: Report format version
        task: The analysis that was run
        engine: Engine that produced the witnesses
        store_hash: SHA-256 digest of the canonical policy text
        domain_sizes: Number of tokens per category
        witnesses: Witnesses in deterministic order, possibly truncated
        total: Number of witnesses found before truncation
        truncated: Whether witnesses were dropped
        elapsed_ms: Wall-clock time of the analysis
        metrics: Engine and cache counters, when collected
    """

    version: str = REPORT_VERSION
    task: AnalysisTask
    engine: Engine
    store_hash: str
    domain_sizes: Dict[str, int]
    witnesses: List[Witness] = Field(default_factory=list)
    total: int = Field(default=0, ge=0)
    truncated: bool = False
    elapsed_ms: float = Field(default=0.0, ge=0.0)
    metrics: Optional[Dict[str, Any]] = None

    model_config = ConfigDict(validate_assignment=True, use_enum_values=False)

    @model_validator(mode="after")
    def _check_counts(self) -> "AnalysisReport":
        if self.total < len(self.witnesses):
            raise ValueError("total cannot be smaller than the number of witnesses")
        if self.truncated != (self.total > len(self.witnesses)):
            raise ValueError("truncated must be set exactly when witnesses were dropped")
        return self

    @property
    def has_findings(self) -> bool:
        """Check whether any witness was found."""
        return self.total > 0

    def to_json_dict(self) -> Dict[str, Any]:
        """Render the report as a JSON-compatible mapping."""
        rendered: Dict[str, Any] = {
            "version": self.version,
            "task": self.task.value,
            "engine": self.engine.value,
            "store_hash": self.store_hash,
            "domain_sizes": dict(self.domain_sizes),
            "witnesses": [witness.to_json_dict() for witness in self.witnesses],
            "total": self.total,
            "truncated": self.truncated,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.metrics is not None:
            rendered["metrics"] = self.metrics
        return rendered
