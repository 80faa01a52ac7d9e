"""
Run Configuration.

One command-line invocation: which files to read, where to write and the
analyzer settings to use.
"""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from xacml_analyzer.config.analyzer_config import AnalyzerConfig


class RunConfig(BaseModel):
    """
    Configuration of a single command-line run.

    Attributes:
        policies: Policy file.
        domains: Attribute-domain file.
        request: Request file, for evaluation and the eval program.
        out: Output file; None writes to stdout.
        verbosity: Number of -v flags given.
        analyzer: Analyzer settings, including budget and max_witnesses.
    """

    policies: Optional[Path] = None
    domains: Optional[Path] = None
    request: Optional[Path] = None
    out: Optional[Path] = None
    verbosity: int = Field(default=0, ge=0)
    analyzer: AnalyzerConfig = Field(default_factory=AnalyzerConfig)

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        """String representation of the configuration."""
        return (
            f"RunConfig(policies={self.policies}, domains={self.domains}, "
            f"request={self.request}, out={self.out}, analyzer={self.analyzer})"
        )
