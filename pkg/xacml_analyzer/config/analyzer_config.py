"""
Analyzer Configuration.

This module provides the settings that bound and shape an analysis run:
the request-space budget, witness truncation, engine selection, the
reachability reading, worker count and cache size. Every field can be
overridden through an ``XACML_ANALYZER_`` environment variable or a
``.env`` file.
"""

from typing import Any, Dict

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from xacml_analyzer.models.enums import Engine, OutputFormat, ReachabilityMode


class AnalyzerConfig(BaseSettings):
    """
    Configuration for policy analyses.

    Attributes:
        budget: Largest request space an analysis may enumerate.
        max_witnesses: Number of witnesses kept in a report.
        engine: Engine answering evaluations and analyses.
        reachability_mode: Which reading of reachability to run.
        workers: Threads sweeping the request space.
        program_cache_size: Number of ground programs kept in memory.
        output_format: Report format written by the command line.

    Examples:
        >>> # Create with defaults, honouring XACML_ANALYZER_* variables
        >>> config = AnalyzerConfig()

        >>> # Use builder pattern
        >>> config = (AnalyzerConfig.builder()
        ...     .budget(1024)
        ...     .engine(Engine.BOTH)
        ...     .build())
    """

    budget: int = Field(default=65536, ge=1)
    max_witnesses: int = Field(default=50, ge=1)
    engine: Engine = Field(default=Engine.NATIVE)
    reachability_mode: ReachabilityMode = Field(default=ReachabilityMode.PER_REQUEST)
    workers: int = Field(default=1, ge=1, le=64)
    program_cache_size: int = Field(default=32, ge=1)
    output_format: OutputFormat = Field(default=OutputFormat.TEXT)

    model_config = SettingsConfigDict(
        env_prefix="XACML_ANALYZER_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        use_enum_values=False,
        validate_assignment=True,
    )

    @classmethod
    def builder(cls) -> "AnalyzerConfigBuilder":
        """
        Create a builder for fluent API construction.

        Returns:
            AnalyzerConfigBuilder instance for method chaining.
        """
        return AnalyzerConfigBuilder()

    def __str__(self) -> str:
        """String representation of the configuration."""
        return (
            f"AnalyzerConfig(budget={self.budget}, max_witnesses={self.max_witnesses}, "
            f"engine={self.engine.value}, reachability_mode={self.reachability_mode.value}, "
            f"workers={self.workers})"
        )


class AnalyzerConfigBuilder:
    """
    Builder class for fluent AnalyzerConfig construction.

    Only the fields that were set are passed on, so unset fields keep
    their environment or default values.

    Examples:
        >>> config = (AnalyzerConfig.builder()
        ...     .max_witnesses(10)
        ...     .reachability_mode(ReachabilityMode.SATURATED)
        ...     .workers(4)
        ...     .build())
    """

    def __init__(self) -> None:
        """Initialize builder with no overrides."""
        self._values: Dict[str, Any] = {}

    def budget(self, budget: int) -> "AnalyzerConfigBuilder":
        """Set the request-space budget."""
        self._values["budget"] = budget
        return self

    def max_witnesses(self, count: int) -> "AnalyzerConfigBuilder":
        """Set the number of witnesses kept in a report."""
        self._values["max_witnesses"] = count
        return self

    def engine(self, engine: Engine) -> "AnalyzerConfigBuilder":
        """Set the engine."""
        self._values["engine"] = engine
        return self

    def reachability_mode(self, mode: ReachabilityMode) -> "AnalyzerConfigBuilder":
        """Set the reachability reading."""
        self._values["reachability_mode"] = mode
        return self

    def workers(self, workers: int) -> "AnalyzerConfigBuilder":
        """Set the number of sweep threads."""
        self._values["workers"] = workers
        return self

    def program_cache_size(self, size: int) -> "AnalyzerConfigBuilder":
        """Set the ground-program cache size."""
        self._values["program_cache_size"] = size
        return self

    def output_format(self, output_format: OutputFormat) -> "AnalyzerConfigBuilder":
        """Set the report format."""
        self._values["output_format"] = output_format
        return self

    def build(self) -> AnalyzerConfig:
        """
        Build and return the AnalyzerConfig instance.

        Returns:
            Configured AnalyzerConfig instance.
        """
        return AnalyzerConfig(**self._values)
