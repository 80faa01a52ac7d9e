"""
Witness model.

A witness is the evidence attached to an analysis finding: the request
that exhibits it (when there is one), the components involved and their
decisions.
"""

from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from xacml_analyzer.models.enums import (
    Decision,
    Engine,
    ReachabilityMode,
    UnreachableReason,
    WitnessKind,
)
from xacml_analyzer.models.request import Request


class Witness(BaseModel):
    """
    Evidence for a gap, conflict or unreachable rule.

    Attributes:
        kind: What was found
        request: The request exhibiting the finding; absent for unreachable
            rules found by quantifying over every request
        components: Identifiers of the components involved
        decisions: Decision of each involved component under the request
        engine: Engine that produced the witness
        provenance: How an unreachable rule was decided
        reason: Why a rule is unreachable
    """

    kind: WitnessKind
    request: Optional[Request] = None
    components: Tuple[str, ...]
    decisions: Dict[str, Decision]
    engine: Engine
    provenance: Optional[ReachabilityMode] = None
    reason: Optional[UnreachableReason] = None

    model_config = ConfigDict(frozen=True)

    def identity(self) -> Tuple[Any, ...]:
        """Engine-independent key used to compare findings across engines."""
        request = self.request.category_tokens() if self.request is not None else None
        facts = tuple(str(f) for f in self.request.sorted_facts()) if self.request else ()
        return (self.kind, request, facts, self.components, self.provenance, self.reason)

    def to_json_dict(self) -> Dict[str, Any]:
        """Render the witness for the JSON report."""
        rendered: Dict[str, Any] = {
            "kind": self.kind.value,
            "request": self.request.to_json_dict() if self.request is not None else None,
            "components": list(self.components),
            "decisions": {cid: d.display_name for cid, d in self.decisions.items()},
            "engine": self.engine.value,
        }
        if self.provenance is not None:
            rendered["provenance"] = self.provenance.value
        if self.reason is not None:
            rendered["reason"] = self.reason.value
        return rendered
