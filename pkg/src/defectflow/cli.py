"""Command-line entry point.

Subcommands wire the pipeline together: ``validate`` and ``calibrate``
consume a log directory (effort.csv, defects.csv, size.csv), ``simulate``,
``compare``, and ``sweep`` consume a workflow document, and ``serve`` starts
the HTTP API. Outputs go to a file or stdout (``-o -``). Exit codes: 0
success, 1 validation or data failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .calibrate import CalibrationError, audit_to_dict, calibrate_workflow
from .ingest import LogBundle, LogParseError, apply_aliases, load_logs, validate_logs
from .model import (
    Scenario,
    Violation,
    WorkflowDocumentError,
    dump_workflow,
    load_workflow,
    validate_workflow,
)
from .report import render_delta, render_trace
from .scenario import SWEEPABLE_PARAMETERS, compare, sweep
from .simulate import InvalidWorkflowError, ModelError, simulate

__all__ = ["dispatch", "main", "default_fixtures_dir"]

SCENARIO_FLAGS = {"with": Scenario.WITH_SA, "without": Scenario.WITHOUT_SA}


def default_fixtures_dir() -> Path:
    """Fixture directory: DEFECTFLOW_FIXTURES, the repository checkout's
    fixtures/, or ./fixtures, in that order."""
    env = os.environ.get("DEFECTFLOW_FIXTURES")
    if env:
        return Path(env)
    repo_fixtures = Path(__file__).resolve().parents[2] / "fixtures"
    if repo_fixtures.is_dir():
        return repo_fixtures
    return Path.cwd() / "fixtures"


def _write_output(text: str, destination: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def _load_bundle(args) -> LogBundle:
    logs = Path(args.logs)
    bundle = load_logs(logs / "effort.csv", logs / "defects.csv", logs / "size.csv")
    if args.alias:
        aliases = json.loads(Path(args.alias).read_text(encoding="utf-8"))
        if not isinstance(aliases, dict):
            raise WorkflowDocumentError(f"{args.alias}: alias table must be a JSON object")
        bundle = apply_aliases(bundle, aliases)
    return bundle


def _print_report(violations: list[Violation]) -> None:
    for v in violations:
        print(f"{v.severity}: [{v.code}] {v.message}")


def _parse_overrides(pairs: list[str]) -> dict[str, float]:
    overrides = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"--sa-override expects NAME=VALUE, got {pair!r}")
        overrides[name] = float(value)
    return overrides


def _cmd_validate(args) -> int:
    workflow = load_workflow(args.workflow)
    violations = validate_workflow(workflow)
    errors = [v for v in violations if v.is_error()]
    if not errors:
        bundle = _load_bundle(args)
        violations = violations + validate_logs(
            bundle, workflow, outlier_multiple=args.outlier_multiple
        )
        errors = [v for v in violations if v.is_error()]
    _print_report(violations)
    if errors:
        return 1
    print("ok: no violations" if not violations else "ok: warnings only")
    return 0


def _cmd_calibrate(args) -> int:
    workflow = load_workflow(args.workflow)
    bundle = _load_bundle(args)
    errors = [v for v in validate_workflow(workflow) if v.is_error()]
    errors += [v for v in validate_logs(bundle, workflow) if v.is_error()]
    if errors:
        _print_report(errors)
        return 1
    result = calibrate_workflow(
        bundle,
        workflow,
        sa_phase_names=frozenset(args.sa_phase),
        sa_yield_overrides=_parse_overrides(args.sa_override),
    )
    for message in result.warnings:
        print(f"warning: {message}", file=sys.stderr)
    _write_output(dump_workflow(result.workflow), args.output)
    if args.audit:
        _write_output(json.dumps(audit_to_dict(result), indent=2) + "\n", args.audit)
    return 0


def _cmd_simulate(args) -> int:
    workflow = load_workflow(args.workflow)
    trace = simulate(workflow, args.size, SCENARIO_FLAGS[args.scenario])
    _write_output(render_trace(trace, args.format), args.output)
    return 0


def _cmd_compare(args) -> int:
    workflow = load_workflow(args.workflow)
    delta = compare(workflow, args.size)
    _write_output(render_delta(delta, args.format), args.output)
    return 0


def _cmd_sweep(args) -> int:
    workflow = load_workflow(args.workflow)
    values = [float(v) for v in args.values.split(",") if v != ""]
    series = sweep(workflow, args.size, (args.phase, args.param), values)
    if args.format == "json":
        from .report import delta_to_dict

        doc = [{"value": value, "delta": delta_to_dict(delta)} for value, delta in series]
        _write_output(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = ["value,effort_delta,escape_reduction_fraction,density_without,density_with"]
        for value, delta in series:
            reduction = (
                "" if delta.escape_reduction_fraction is None
                else repr(delta.escape_reduction_fraction)
            )
            lines.append(
                f"{value!r},{delta.effort_delta!r},{reduction},"
                f"{delta.density_without!r},{delta.density_with!r}"
            )
        _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(Path(args.fixtures), cors_origins=args.cors_origin or ["*"])
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defectflow",
        description="Deterministic cost-of-quality simulation over defect-flow workflows.",
    )
    parser.add_argument("--version", action="version", version=f"defectflow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_logs_flags(p):
        p.add_argument("--logs", required=True, help="directory with effort.csv, defects.csv, size.csv")
        p.add_argument("--alias", help="JSON object mapping log phase names to workflow names")

    p = sub.add_parser("validate", help="check logs against a workflow")
    p.add_argument("--workflow", required=True)
    add_logs_flags(p)
    p.add_argument("--outlier-multiple", type=float, default=100.0,
                   help="flag fix times beyond this multiple of the phase median")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("calibrate", help="derive phase parameters from logs")
    p.add_argument("--workflow", required=True, help="workflow giving phase order and flags")
    add_logs_flags(p)
    p.add_argument("--sa-phase", action="append", default=[],
                   help="phase whose yield gap is attributed to a static-analysis tool (repeatable)")
    p.add_argument("--sa-override", action="append", default=[], metavar="NAME=VALUE",
                   help="without-SA yield for a shared sa phase (repeatable)")
    p.add_argument("-o", "--output", default="-", help="calibrated workflow destination")
    p.add_argument("--audit", help="write the calibration audit report here")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("simulate", help="propagate one scenario through a workflow")
    p.add_argument("--workflow", required=True)
    p.add_argument("--size", type=int, required=True, help="added-and-modified LOC")
    p.add_argument("--scenario", choices=sorted(SCENARIO_FLAGS), default="with")
    p.add_argument("--format", choices=["table", "csv", "json"], default="json")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="with-SA vs without-SA comparison")
    p.add_argument("--workflow", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--format", choices=["table", "csv", "json"], default="json")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("sweep", help="compare across a range of one parameter")
    p.add_argument("--workflow", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--phase", required=True)
    p.add_argument("--param", choices=SWEEPABLE_PARAMETERS, required=True)
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", help="start the HTTP API")
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--fixtures", default=str(default_fixtures_dir()),
                   help="directory of *.workflow.json documents")
    p.add_argument("--cors-origin", action="append",
                   help="allowed UI origin (repeatable; default any)")
    p.set_defaults(func=_cmd_serve)
    return parser


def dispatch(argv: list[str]) -> int:
    """Run one invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: usage errors, --help, --version
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (
        LogParseError,
        WorkflowDocumentError,
        InvalidWorkflowError,
        CalibrationError,
        ModelError,
        ValueError,
        KeyError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
