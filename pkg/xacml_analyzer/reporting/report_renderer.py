"""
Report renderer - Text and JSON output for analysis reports.

The JSON document follows docs/report-schema.json; the text report is a
jinja2 template with a summary block and one line per witness.
"""

import json
from pathlib import Path
from typing import Optional

from jinja2 import Environment, StrictUndefined

from xacml_analyzer.models.analysis_report import AnalysisReport
from xacml_analyzer.models.enums import OutputFormat, WitnessKind
from xacml_analyzer.models.witness import Witness

TEXT_TEMPLATE = """\
{{ "=" * 47 }}
         XACML {{ report.task.value | capitalize }} Analysis
{{ "=" * 47 }}
Engine: {{ report.engine.value }}
Store: {{ report.store_hash[:16] }}
Domain sizes: {{ sizes }}
Elapsed: {{ "%.1f" | format(report.elapsed_ms) }} ms
{{ "=" * 47 }}
{% if not report.witnesses %}
No {{ finding }} found.
{% else %}
{{ report.total }} {{ finding }} found
{%- if report.truncated %}, showing the first {{ report.witnesses | length }}{% endif %}:
{% for witness in report.witnesses %}
{{ "%3d" | format(loop.index) }}. {{ describe(witness) }}
{% endfor %}
{% endif %}
"""

_FINDINGS = {
    "gap": "gaps",
    "conflict": "conflicts",
    "reachability": "unreachable rules",
}


def describe_witness(witness: Witness) -> str:
    """
    Render one witness on a single line.

    Examples:
        >>> describe_witness(gap_witness)
        'gap {subject(nurse)}: ps1=not_applicable'
    """
    decisions = ", ".join(
        f"{cid}={decision.display_name}" for cid, decision in witness.decisions.items()
    )
    parts = [witness.kind.value]
    if witness.kind is WitnessKind.UNREACHABLE:
        parts.append(witness.components[0])
        parts.append(f"[{witness.reason.value if witness.reason else 'unclassified'}]")
        if witness.provenance is not None:
            parts.append(f"({witness.provenance.value})")
    elif witness.kind is WitnessKind.CONFLICT:
        parts.append(" vs ".join(witness.components))
    line = " ".join(parts)
    if witness.request is not None:
        line += f" {witness.request}"
    if decisions:
        line += f": {decisions}"
    return line


class ReportRenderer:
    """
    Renders analysis reports as text or JSON.

    Examples:
        >>> renderer = ReportRenderer()
        >>> print(renderer.render(report, OutputFormat.JSON))
    """

    def __init__(self) -> None:
        self._environment = Environment(
            undefined=StrictUndefined, trim_blocks=True, keep_trailing_newline=True
        )
        self._text_template = self._environment.from_string(TEXT_TEMPLATE)

    def render_json(self, report: AnalysisReport) -> str:
        """Render the report as an indented JSON document with a trailing newline."""
        return json.dumps(report.to_json_dict(), indent=2) + "\n"

    def render_text(self, report: AnalysisReport) -> str:
        """Render the report as a human-readable summary."""
        return self._text_template.render(
            report=report,
            finding=_FINDINGS[report.task.value],
            sizes=", ".join(f"{name}={size}" for name, size in report.domain_sizes.items()),
            describe=describe_witness,
        )

    def render(self, report: AnalysisReport, output_format: OutputFormat) -> str:
        """Render the report in the requested format."""
        if output_format is OutputFormat.JSON:
            return self.render_json(report)
        return self.render_text(report)

    def write(
        self,
        report: AnalysisReport,
        output_format: OutputFormat,
        output_path: Optional[Path] = None,
    ) -> str:
        """
        Render the report and write it to a file when a path is given.

        Returns:
            The rendered report
        """
        content = self.render(report, output_format)
        if output_path is not None:
            with open(output_path, "w", encoding="utf-8") as f:
                f.write(content)
        return content
