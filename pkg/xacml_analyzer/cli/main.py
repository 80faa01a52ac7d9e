"""
Command-line front end.

Commands:
    evaluate                   decide a request
    analyze gap|conflict|reachability
    emit-lp eval|gap|conflict|reachability
    solve PROGRAM              answer sets of an ASP program file

Results go to stdout (or --out); logs and diagnostics go to stderr.
"""

import argparse
import json
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from xacml_analyzer.analyzer.lp_pipeline import LPPipeline
from xacml_analyzer.analyzer.policy_analyzer import PolicyAnalyzer
from xacml_analyzer.cache.program_cache import ProgramCache
from xacml_analyzer.config.analyzer_config import AnalyzerConfig
from xacml_analyzer.config.run_config import RunConfig
from xacml_analyzer.engine.grounder import ground
from xacml_analyzer.engine.solver import Solver
from xacml_analyzer.exception.exceptions import (
    BudgetExceededException,
    ConfigurationException,
    EngineMismatchException,
    PolicySyntaxException,
    XacmlAnalyzerException,
)
from xacml_analyzer.lp.emitter import emit_program, serialize_program
from xacml_analyzer.lp.lp_parser import parse_program
from xacml_analyzer.models.domains import AttributeDomains
from xacml_analyzer.models.enums import (
    AnalysisTask,
    Decision,
    Engine,
    OutputFormat,
    ProgramTask,
    ReachabilityMode,
)
from xacml_analyzer.models.request import Request
from xacml_analyzer.models.store import PolicyStore, build_store
from xacml_analyzer.parser.domains_parser import parse_domains
from xacml_analyzer.parser.policy_parser import parse_policy_file
from xacml_analyzer.parser.request_parser import parse_request
from xacml_analyzer.pdp.evaluator import trace
from xacml_analyzer.reporting.report_renderer import ReportRenderer

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit statuses."""

    PERMIT = 0
    """evaluate: permit; other commands: success without findings"""

    DENY = 1
    """evaluate: deny"""

    NOT_APPLICABLE = 2
    """evaluate: not applicable"""

    FINDINGS = 3
    """analyze: witnesses found; solve: unsatisfiable"""

    ENGINE_MISMATCH = 4
    """--engine both: the engines disagree"""

    INPUT_ERROR = 64
    """Unparsable or invalid input"""

    BUDGET_EXCEEDED = 65
    """The request space exceeds the budget"""

    IO_ERROR = 66
    """A file could not be read or written"""


SUCCESS = ExitCode.PERMIT

_DECISION_EXIT = {
    Decision.PERMIT: ExitCode.PERMIT,
    Decision.DENY: ExitCode.DENY,
    Decision.NOT_APPLICABLE: ExitCode.NOT_APPLICABLE,
}

EPILOG = """\
exit status:
  evaluate  0 permit, 1 deny, 2 not applicable
  analyze   0 no witnesses, 3 witnesses found
  solve     0 satisfiable, 3 unsatisfiable
  4 engines disagree (--engine both), 64 invalid input,
  65 request space exceeds --budget, 66 file not readable or writable

environment:
  XACML_ANALYZER_BUDGET, XACML_ANALYZER_MAX_WITNESSES, XACML_ANALYZER_ENGINE, ...
  override the defaults; command-line flags override the environment.
"""


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with all commands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--policies", type=Path, help="policy file")
    common.add_argument("--domains", type=Path, help="attribute-domain file")
    common.add_argument("--request", type=Path, help="request file")
    common.add_argument(
        "--engine", choices=[e.value for e in Engine], help="native, lp or both"
    )
    common.add_argument("--max-witnesses", type=int, help="witnesses kept in a report")
    common.add_argument("--budget", type=int, help="largest request space to enumerate")
    common.add_argument(
        "--mode",
        choices=[m.value for m in ReachabilityMode],
        help="reachability reading: per_request, saturated or both",
    )
    common.add_argument("--workers", type=int, help="threads sweeping the request space")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="text or json")
    common.add_argument("--out", type=Path, help="write the result here instead of stdout")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs"
    )

    parser = argparse.ArgumentParser(
        prog="xacml-analyzer",
        description="Evaluate and analyse XACML policies through answer set programming.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("evaluate", parents=[common], help="decide a request")

    analyze = commands.add_parser("analyze", parents=[common], help="run an analysis")
    analyze.add_argument("task", choices=[t.value for t in AnalysisTask])

    emit = commands.add_parser("emit-lp", parents=[common], help="print a logic program")
    emit.add_argument("task", choices=[t.value for t in ProgramTask])

    solve = commands.add_parser("solve", parents=[common], help="solve an ASP program file")
    solve.add_argument("program", type=Path)
    solve.add_argument("--models", type=int, default=0, help="stop after N models; 0 for all")
    return parser


def make_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge command-line flags over the environment-derived settings.

    Raises:
        ConfigurationException: If a flag value is out of range
    """
    builder = AnalyzerConfig.builder()
    if args.engine is not None:
        builder.engine(Engine(args.engine))
    if args.max_witnesses is not None:
        builder.max_witnesses(args.max_witnesses)
    if args.budget is not None:
        builder.budget(args.budget)
    if args.mode is not None:
        builder.reachability_mode(ReachabilityMode(args.mode))
    if args.workers is not None:
        builder.workers(args.workers)
    if args.format is not None:
        builder.output_format(OutputFormat(args.format))
    try:
        return RunConfig(
            policies=args.policies,
            domains=args.domains,
            request=args.request,
            out=args.out,
            verbosity=args.verbose,
            analyzer=builder.build(),
        )
    except ValidationError as e:
        raise ConfigurationException(f"invalid option: {_first_error(e)}", cause=e) from e


def configure_logging(verbosity: int) -> None:
    """Send logs to stderr at WARNING, INFO (-v) or DEBUG (-vv)."""
    levels = {0: logging.WARNING, 1: logging.INFO}
    level = levels.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


# ==================== Loading ====================


def _read(path: Optional[Path], option: str) -> str:
    if path is None:
        raise ConfigurationException(f"{option} is required for this command")
    with open(path, encoding="utf-8") as f:
        return f.read()


def load_domains(config: RunConfig) -> AttributeDomains:
    """Read and parse the domain file."""
    return parse_domains(_read(config.domains, "--domains"), source=str(config.domains))


def load_store(config: RunConfig, domains: AttributeDomains) -> PolicyStore:
    """Read, parse and validate the policy file against the domains."""
    text = _read(config.policies, "--policies")
    components = parse_policy_file(text, source=str(config.policies))
    store = build_store(components, domains)
    logger.info(
        "Loaded %d components (%d rules) rooted at %s",
        len(store),
        len(store.rule_ids()),
        store.root_id,
    )
    return store


def load_request(config: RunConfig, domains: AttributeDomains) -> Request:
    """Read and parse the request file."""
    return parse_request(_read(config.request, "--request"), domains, source=str(config.request))


def _emit(config: RunConfig, content: str) -> None:
    if config.out is None:
        sys.stdout.write(content)
    else:
        with open(config.out, "w", encoding="utf-8") as f:
            f.write(content)


# ==================== Commands ====================


def cmd_evaluate(config: RunConfig) -> ExitCode:
    """
    Decide the request and print the root decision.

    With -v every component's decision follows; with --engine both the
    engines' root decisions are compared.
    """
    domains = load_domains(config)
    store = load_store(config, domains)
    request = load_request(config, domains)
    engine = config.analyzer.engine

    native = trace(store, request, domains) if engine is not Engine.LP else None
    lp = (
        LPPipeline(ProgramCache(config.analyzer.program_cache_size)).evaluate(
            store, request, domains
        )
        if engine is not Engine.NATIVE
        else None
    )
    decisions: Dict[str, Optional[Decision]] = dict(native if native is not None else lp)
    root = decisions[store.root_id]
    agree = native is None or lp is None or native == lp

    if config.analyzer.output_format is OutputFormat.JSON:
        document: Dict[str, object] = {
            "decision": _name(root),
            "components": {cid: _name(d) for cid, d in decisions.items()},
        }
        if native is not None and lp is not None:
            document["engines_agree"] = agree
            document["lp_components"] = {cid: _name(d) for cid, d in lp.items()}
        _emit(config, json.dumps(document, indent=2) + "\n")
    else:
        lines = [_name(root)]
        if config.verbosity >= 1:
            lines.extend(f"{cid}: {_name(d)}" for cid, d in decisions.items())
        if native is not None and lp is not None:
            verdict = "engines agree" if agree else "engines disagree"
            lines.append(
                f"{verdict}: native={_name(native[store.root_id])} lp={_name(lp[store.root_id])}"
            )
            if not agree:
                lines.extend(
                    f"  {cid}: native={_name(native[cid])} lp={_name(lp[cid])}"
                    for cid in store.ids()
                    if native[cid] is not lp[cid]
                )
        _emit(config, "".join(line + "\n" for line in lines))

    if not agree:
        return ExitCode.ENGINE_MISMATCH
    return _DECISION_EXIT[root] if root is not None else ExitCode.ENGINE_MISMATCH


def cmd_analyze(config: RunConfig, task: AnalysisTask) -> ExitCode:
    """Run an analysis and print its report; 3 when witnesses were found."""
    domains = load_domains(config)
    store = load_store(config, domains)
    report = PolicyAnalyzer(config.analyzer).analyze(task, store, domains)
    _emit(config, ReportRenderer().render(report, config.analyzer.output_format))
    return ExitCode.FINDINGS if report.has_findings else SUCCESS


def cmd_emit_lp(config: RunConfig, task: ProgramTask) -> ExitCode:
    """Print the logic program of a task."""
    domains = load_domains(config)
    store = load_store(config, domains)
    request = load_request(config, domains) if task is ProgramTask.EVAL else None
    _emit(config, serialize_program(emit_program(task, store, domains, request)))
    return SUCCESS


def cmd_solve(config: RunConfig, program_path: Path, limit: int) -> ExitCode:
    """Print the answer sets of an ASP program; 3 when there are none."""
    with open(program_path, encoding="utf-8") as f:
        program = parse_program(f.read(), source=str(program_path))
    models = Solver(ground(program)).enumerate_models(limit or None)
    lines: List[str] = []
    for number, model in enumerate(models, start=1):
        lines.append(f"Answer: {number}")
        lines.append(str(model))
    lines.append("SATISFIABLE" if models else "UNSATISFIABLE")
    _emit(config, "".join(line + "\n" for line in lines))
    return SUCCESS if models else ExitCode.FINDINGS


def _name(decision: Optional[Decision]) -> str:
    return decision.display_name if decision is not None else "undefined"


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}"


def _report_error(error: XacmlAnalyzerException) -> None:
    if isinstance(error, PolicySyntaxException):
        where = f"{error.span}: " if error.span is not None else ""
        print(f"error: {where}{error.message}", file=sys.stderr)
        if error.expected:
            print(f"  expected one of: {', '.join(error.expected)}", file=sys.stderr)
    else:
        print(f"error: {error.message}", file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name; sys.argv by default

    Returns:
        The exit status
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = make_run_config(args)
        commands: Dict[str, Callable[[], ExitCode]] = {
            "evaluate": lambda: cmd_evaluate(config),
            "analyze": lambda: cmd_analyze(config, AnalysisTask(args.task)),
            "emit-lp": lambda: cmd_emit_lp(config, ProgramTask(args.task)),
            "solve": lambda: cmd_solve(config, args.program, args.models),
        }
        return int(commands[args.command]())
    except BudgetExceededException as e:
        _report_error(e)
        return int(ExitCode.BUDGET_EXCEEDED)
    except EngineMismatchException as e:
        _report_error(e)
        return int(ExitCode.ENGINE_MISMATCH)
    except XacmlAnalyzerException as e:
        _report_error(e)
        return int(ExitCode.INPUT_ERROR)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.IO_ERROR)


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
