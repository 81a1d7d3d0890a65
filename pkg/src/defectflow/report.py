"""Rendering of traces and scenario deltas.

Three formats share one set of values: ``table`` for terminals (fixed two
decimals, the precision parameter tables are quoted at), ``csv`` for plotting
pipelines, ``json`` for machine consumers. csv and json carry full float
precision and parse back losslessly; the HTTP API returns exactly the json
renderings produced here.
"""

from __future__ import annotations

import csv
import io
import json

from .model import PhaseOutcome, Scenario, SimulationTrace
from .scenario import FailureReduction, PhasePairDelta, ScenarioDelta

__all__ = [
    "render_trace",
    "render_delta",
    "trace_to_dict",
    "trace_from_dict",
    "parse_trace_json",
    "parse_trace_csv",
    "delta_to_dict",
    "delta_from_dict",
    "parse_delta_json",
    "parse_delta_csv",
]

TRACE_CSV_COLUMNS = [
    "phase",
    "base_effort",
    "fix_effort",
    "total_effort",
    "entering",
    "injected",
    "removed",
    "escaping",
]

DELTA_CSV_COLUMNS = [
    "phase",
    "removed_without",
    "removed_with",
    "removal_delta",
    "effort_without",
    "effort_with",
    "effort_delta",
    "escape_reduction_fraction",
    "density_without",
    "density_with",
]

_FORMATS = ("table", "csv", "json")


def _check_format(fmt: str) -> None:
    if fmt not in _FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose one of {_FORMATS}")


def _full(value: float | None) -> str:
    # repr round-trips every float exactly.
    return "" if value is None else repr(float(value))


def _opt(value: str) -> float | None:
    return None if value == "" else float(value)


# --- traces -----------------------------------------------------------------


def trace_to_dict(trace: SimulationTrace) -> dict:
    return {
        "workflow_name": trace.workflow_name,
        "scenario": trace.scenario.value,
        "size_loc": trace.size_loc,
        "outcomes": [
            {
                "phase_name": o.phase_name,
                "base_effort": o.base_effort,
                "fix_effort": o.fix_effort,
                "total_effort": o.total_effort,
                "defects_entering": o.defects_entering,
                "defects_injected": o.defects_injected,
                "defects_removed": o.defects_removed,
                "defects_escaping": o.defects_escaping,
            }
            for o in trace.outcomes
        ],
        "total_effort": trace.total_effort,
        "escapes": trace.escapes,
        "density_per_kloc": trace.density_per_kloc,
    }


def trace_from_dict(doc: dict) -> SimulationTrace:
    return SimulationTrace(
        workflow_name=doc["workflow_name"],
        scenario=Scenario(doc["scenario"]),
        size_loc=doc["size_loc"],
        outcomes=tuple(
            PhaseOutcome(
                phase_name=o["phase_name"],
                base_effort=o["base_effort"],
                fix_effort=o["fix_effort"],
                total_effort=o["total_effort"],
                defects_entering=o["defects_entering"],
                defects_injected=o["defects_injected"],
                defects_removed=o["defects_removed"],
                defects_escaping=o["defects_escaping"],
            )
            for o in doc["outcomes"]
        ),
        total_effort=doc["total_effort"],
        escapes=doc["escapes"],
        density_per_kloc=doc["density_per_kloc"],
    )


def parse_trace_json(text: str) -> SimulationTrace:
    return trace_from_dict(json.loads(text))


def _trace_rows(trace: SimulationTrace) -> list[list]:
    rows = [
        [
            o.phase_name,
            o.base_effort,
            o.fix_effort,
            o.total_effort,
            o.defects_entering,
            o.defects_injected,
            o.defects_removed,
            o.defects_escaping,
        ]
        for o in trace.outcomes
    ]
    rows.append(
        [
            "TOTAL",
            sum(o.base_effort for o in trace.outcomes),
            sum(o.fix_effort for o in trace.outcomes),
            trace.total_effort,
            None,
            sum(o.defects_injected for o in trace.outcomes),
            sum(o.defects_removed for o in trace.outcomes),
            trace.escapes,
        ]
    )
    return rows


def render_trace(trace: SimulationTrace, fmt: str = "table") -> str:
    """One row per phase plus a totals row, in the requested format."""
    _check_format(fmt)
    if fmt == "json":
        return json.dumps(trace_to_dict(trace), indent=2) + "\n"
    rows = _trace_rows(trace)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRACE_CSV_COLUMNS)
        for row in rows:
            writer.writerow([row[0]] + [_full(v) for v in row[1:]])
        return buf.getvalue()
    return _format_table(TRACE_CSV_COLUMNS, rows)


def parse_trace_csv(text: str) -> tuple[list[PhaseOutcome], dict]:
    """Inverse of render_trace(..., "csv"): per-phase outcomes plus totals."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != TRACE_CSV_COLUMNS:
        raise ValueError(f"bad trace csv header: {header!r}")
    outcomes = []
    totals: dict = {}
    for row in reader:
        if not row:
            continue
        if row[0] == "TOTAL":
            totals = {
                "base_effort": float(row[1]),
                "fix_effort": float(row[2]),
                "total_effort": float(row[3]),
                "injected": float(row[5]),
                "removed": float(row[6]),
                "escapes": float(row[7]),
            }
            continue
        outcomes.append(
            PhaseOutcome(
                phase_name=row[0],
                base_effort=float(row[1]),
                fix_effort=float(row[2]),
                total_effort=float(row[3]),
                defects_entering=float(row[4]),
                defects_injected=float(row[5]),
                defects_removed=float(row[6]),
                defects_escaping=float(row[7]),
            )
        )
    return outcomes, totals


# --- deltas -----------------------------------------------------------------


def delta_to_dict(delta: ScenarioDelta) -> dict:
    return {
        "trace_with": trace_to_dict(delta.trace_with),
        "trace_without": trace_to_dict(delta.trace_without),
        "effort_delta": delta.effort_delta,
        "escape_reduction_fraction": delta.escape_reduction_fraction,
        "density_with": delta.density_with,
        "density_without": delta.density_without,
        "per_phase_removal_delta": [
            {"phase": d.phase, "without": d.without, "with": d.with_, "delta": d.delta}
            for d in delta.per_phase_removal_delta
        ],
        "per_phase_effort_delta": [
            {"phase": d.phase, "without": d.without, "with": d.with_, "delta": d.delta}
            for d in delta.per_phase_effort_delta
        ],
        "failure_removal_reduction": [
            {"phase": f.phase, "reduction_fraction": f.reduction_fraction}
            for f in delta.failure_removal_reduction
        ],
    }


def delta_from_dict(doc: dict) -> ScenarioDelta:
    return ScenarioDelta(
        trace_with=trace_from_dict(doc["trace_with"]),
        trace_without=trace_from_dict(doc["trace_without"]),
        effort_delta=doc["effort_delta"],
        escape_reduction_fraction=doc["escape_reduction_fraction"],
        density_with=doc["density_with"],
        density_without=doc["density_without"],
        per_phase_removal_delta=tuple(
            PhasePairDelta(d["phase"], d["without"], d["with"])
            for d in doc["per_phase_removal_delta"]
        ),
        per_phase_effort_delta=tuple(
            PhasePairDelta(d["phase"], d["without"], d["with"])
            for d in doc["per_phase_effort_delta"]
        ),
        failure_removal_reduction=tuple(
            FailureReduction(f["phase"], f["reduction_fraction"])
            for f in doc["failure_removal_reduction"]
        ),
    )


def parse_delta_json(text: str) -> ScenarioDelta:
    return delta_from_dict(json.loads(text))


def _delta_rows(delta: ScenarioDelta) -> list[list]:
    rows = []
    for rem, eff in zip(delta.per_phase_removal_delta, delta.per_phase_effort_delta):
        rows.append(
            [rem.phase, rem.without, rem.with_, rem.delta, eff.without, eff.with_, eff.delta,
             None, None, None]
        )
    rows.append(
        [
            "TOTAL",
            sum(d.without for d in delta.per_phase_removal_delta),
            sum(d.with_ for d in delta.per_phase_removal_delta),
            sum(d.delta for d in delta.per_phase_removal_delta),
            delta.trace_without.total_effort,
            delta.trace_with.total_effort,
            delta.effort_delta,
            delta.escape_reduction_fraction,
            delta.density_without,
            delta.density_with,
        ]
    )
    return rows


def render_delta(delta: ScenarioDelta, fmt: str = "table") -> str:
    """Side-by-side per-phase comparison plus the summary block."""
    _check_format(fmt)
    if fmt == "json":
        return json.dumps(delta_to_dict(delta), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(DELTA_CSV_COLUMNS)
        for row in _delta_rows(delta):
            writer.writerow([row[0]] + [_full(v) for v in row[1:]])
        return buf.getvalue()

    lines = [_format_table(DELTA_CSV_COLUMNS[:7], [row[:7] for row in _delta_rows(delta)])]
    if delta.escape_reduction_fraction is None:
        reduction = "n/a (no baseline escapes)"
    else:
        reduction = f"{delta.escape_reduction_fraction * 100:.1f}%"
    lines.append("")
    lines.append(f"effort delta (without - with): {delta.effort_delta:.2f} h")
    lines.append(f"escape reduction: {reduction}")
    lines.append(
        f"defect density: {delta.density_without:.2f} -> {delta.density_with:.2f} Def/KLOC"
    )
    parts = []
    for f in delta.failure_removal_reduction:
        shown = "n/a" if f.reduction_fraction is None else f"{f.reduction_fraction * 100:.1f}%"
        parts.append(f"{f.phase} {shown}")
    if parts:
        lines.append("failure-phase removal reduction: " + ", ".join(parts))
    return "\n".join(lines) + "\n"


def parse_delta_csv(text: str) -> tuple[list[dict], dict]:
    """Inverse of render_delta(..., "csv"): per-phase rows plus summary."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != DELTA_CSV_COLUMNS:
        raise ValueError(f"bad delta csv header: {header!r}")
    phases = []
    summary: dict = {}
    for row in reader:
        if not row:
            continue
        values = dict(zip(header, [row[0]] + [_opt(v) for v in row[1:]]))
        if row[0] == "TOTAL":
            summary = values
        else:
            phases.append(values)
    return phases, summary


# --- shared table formatting -------------------------------------------------


def _format_table(columns: list[str], rows: list[list]) -> str:
    """Fixed-decimal text table; locale-independent by construction."""

    def cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, str):
            return value
        return f"{value:.2f}"

    text_rows = [[cell(v) for v in row] for row in rows]
    widths = [
        max(len(columns[i]), *(len(r[i]) for r in text_rows)) for i in range(len(columns))
    ]
    out = ["  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(columns, widths)))]
    for row in text_rows:
        out.append(
            "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths)))
        )
    return "\n".join(out) + "\n"
