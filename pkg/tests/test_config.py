"""
Tests for analyzer and run configuration.
"""

from pathlib import Path

import pytest
from pydantic import ValidationError

from xacml_analyzer.config.analyzer_config import AnalyzerConfig
from xacml_analyzer.config.run_config import RunConfig
from xacml_analyzer.models.enums import Engine, OutputFormat, ReachabilityMode

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    """Run each test without XACML_ANALYZER_* variables or a .env file."""
    for name in [
        "BUDGET",
        "MAX_WITNESSES",
        "ENGINE",
        "REACHABILITY_MODE",
        "WORKERS",
        "PROGRAM_CACHE_SIZE",
        "OUTPUT_FORMAT",
    ]:
        monkeypatch.delenv(f"XACML_ANALYZER_{name}", raising=False)
    monkeypatch.chdir(tmp_path)


class TestAnalyzerConfig:
    """Defaults, environment overrides and the builder."""

    def test_defaults(self):
        config = AnalyzerConfig()
        assert config.budget == 65536
        assert config.max_witnesses == 50
        assert config.engine is Engine.NATIVE
        assert config.reachability_mode is ReachabilityMode.PER_REQUEST
        assert config.workers == 1
        assert config.program_cache_size == 32
        assert config.output_format is OutputFormat.TEXT

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("XACML_ANALYZER_BUDGET", "1024")
        monkeypatch.setenv("XACML_ANALYZER_ENGINE", "both")
        monkeypatch.setenv("XACML_ANALYZER_REACHABILITY_MODE", "saturated")
        config = AnalyzerConfig()
        assert config.budget == 1024
        assert config.engine is Engine.BOTH
        assert config.reachability_mode is ReachabilityMode.SATURATED

    def test_dotenv_file(self, tmp_path):
        (tmp_path / ".env").write_text("XACML_ANALYZER_MAX_WITNESSES=5\n", encoding="utf-8")
        assert AnalyzerConfig().max_witnesses == 5

    def test_builder(self):
        config = (
            AnalyzerConfig.builder()
            .budget(100)
            .max_witnesses(3)
            .engine(Engine.LP)
            .reachability_mode(ReachabilityMode.BOTH)
            .workers(4)
            .program_cache_size(2)
            .output_format(OutputFormat.JSON)
            .build()
        )
        assert config.budget == 100
        assert config.max_witnesses == 3
        assert config.engine is Engine.LP
        assert config.reachability_mode is ReachabilityMode.BOTH
        assert config.workers == 4
        assert config.output_format is OutputFormat.JSON

    def test_builder_keeps_environment_for_unset_fields(self, monkeypatch):
        monkeypatch.setenv("XACML_ANALYZER_WORKERS", "8")
        config = AnalyzerConfig.builder().budget(10).build()
        assert config.workers == 8
        assert config.budget == 10

    @pytest.mark.parametrize(
        "field, value",
        [("budget", 0), ("max_witnesses", 0), ("workers", 0), ("workers", 65)],
    )
    def test_out_of_range(self, field, value):
        with pytest.raises(ValidationError):
            AnalyzerConfig(**{field: value})

    def test_unknown_engine(self, monkeypatch):
        monkeypatch.setenv("XACML_ANALYZER_ENGINE", "prolog")
        with pytest.raises(ValidationError):
            AnalyzerConfig()

    def test_assignment_validated(self):
        config = AnalyzerConfig()
        with pytest.raises(ValidationError):
            config.budget = -1

    def test_str(self):
        assert "engine=native" in str(AnalyzerConfig())


class TestRunConfig:
    """A single command-line run."""

    def test_defaults(self):
        config = RunConfig()
        assert config.policies is None
        assert config.out is None
        assert config.analyzer.budget == 65536

    def test_paths(self):
        config = RunConfig(policies="store.pol", domains=Path("domains.dom"))
        assert config.policies == Path("store.pol")
        assert "store.pol" in str(config)

    def test_frozen(self):
        config = RunConfig()
        with pytest.raises(ValidationError):
            config.verbosity = 2

    def test_negative_verbosity(self):
        with pytest.raises(ValidationError):
            RunConfig(verbosity=-1)
