"""CSV log ingestion for calibration.

Three comma-separated, UTF-8 files with required headers:

    effort.csv:  project_id,phase,minutes
    defects.csv: project_id,defect_id,inject_phase,remove_phase,fix_minutes
    size.csv:    project_id,added_modified_loc

Minutes are the wire unit; the model unit is hours, converted exactly once
during calibration. A defect row with an empty remove_phase is a defect that
was never found: it stays latent through every later phase and escapes
development. Phase names must match the workflow exactly (case-sensitive);
an alias table can rename log phases before validation.
"""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass, field, replace
from pathlib import Path

from .model import Violation, Workflow

__all__ = [
    "EffortRecord",
    "DefectRecord",
    "SizeRecord",
    "LogBundle",
    "LogParseError",
    "load_logs",
    "write_logs",
    "validate_logs",
    "apply_aliases",
]

EFFORT_HEADER = ["project_id", "phase", "minutes"]
DEFECTS_HEADER = ["project_id", "defect_id", "inject_phase", "remove_phase", "fix_minutes"]
SIZE_HEADER = ["project_id", "added_modified_loc"]


class LogParseError(ValueError):
    """A malformed log row. Carries file, line, and column for diagnostics."""

    def __init__(self, file: str, line: int, column: str, reason: str):
        self.file = file
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"{file}:{line}: column {column!r}: {reason}")


@dataclass(frozen=True)
class EffortRecord:
    project_id: str
    phase: str
    minutes: float
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class DefectRecord:
    project_id: str
    defect_id: str
    inject_phase: str
    remove_phase: str | None  # None: never removed in any logged phase
    fix_minutes: float
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SizeRecord:
    project_id: str
    added_modified_loc: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LogBundle:
    """Parsed effort, defect, and size logs for one organization."""

    effort: tuple[EffortRecord, ...]
    defects: tuple[DefectRecord, ...]
    sizes: tuple[SizeRecord, ...]
    org: str = ""

    def project_ids(self) -> set[str]:
        return {r.project_id for r in self.sizes}

    def total_size(self) -> int:
        return sum(r.added_modified_loc for r in self.sizes)


def _read_rows(path: str | Path, header: list[str]) -> list[tuple[int, dict[str, str]]]:
    name = str(path)
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise LogParseError(name, 1, header[0], "file is empty, expected a header row")
    if rows[0] != header:
        raise LogParseError(
            name, 1, ",".join(header), f"bad header {rows[0]!r}, expected {header!r}"
        )
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise LogParseError(
                name, lineno, header[0], f"expected {len(header)} columns, got {len(row)}"
            )
        out.append((lineno, dict(zip(header, row))))
    return out


def _parse_float(name: str, lineno: int, column: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise LogParseError(name, lineno, column, f"{raw!r} is not a number") from None


def load_logs(
    effort_path: str | Path,
    defects_path: str | Path,
    size_path: str | Path,
    org: str | None = None,
) -> LogBundle:
    """Parse the three log files into an immutable LogBundle.

    Malformed rows raise LogParseError naming file, line, and column. The
    size file must have at least one row; the other two may be empty.
    """
    effort_name, defects_name, size_name = str(effort_path), str(defects_path), str(size_path)

    effort = []
    for lineno, row in _read_rows(effort_path, EFFORT_HEADER):
        if not row["project_id"]:
            raise LogParseError(effort_name, lineno, "project_id", "must not be empty")
        if not row["phase"]:
            raise LogParseError(effort_name, lineno, "phase", "must not be empty")
        minutes = _parse_float(effort_name, lineno, "minutes", row["minutes"])
        if not minutes > 0:
            raise LogParseError(effort_name, lineno, "minutes", "minutes must be positive")
        effort.append(EffortRecord(row["project_id"], row["phase"], minutes, line=lineno))

    defects = []
    seen_ids: set[tuple[str, str]] = set()
    for lineno, row in _read_rows(defects_path, DEFECTS_HEADER):
        if not row["project_id"]:
            raise LogParseError(defects_name, lineno, "project_id", "must not be empty")
        if not row["defect_id"]:
            raise LogParseError(defects_name, lineno, "defect_id", "must not be empty")
        key = (row["project_id"], row["defect_id"])
        if key in seen_ids:
            raise LogParseError(
                defects_name, lineno, "defect_id",
                f"defect_id {row['defect_id']!r} duplicated within project {row['project_id']!r}",
            )
        seen_ids.add(key)
        if not row["inject_phase"]:
            raise LogParseError(defects_name, lineno, "inject_phase", "must not be empty")
        fix_minutes = _parse_float(defects_name, lineno, "fix_minutes", row["fix_minutes"])
        if fix_minutes < 0:
            raise LogParseError(
                defects_name, lineno, "fix_minutes", "fix_minutes must be >= 0"
            )
        remove_phase = row["remove_phase"] or None
        if remove_phase is None and fix_minutes != 0:
            raise LogParseError(
                defects_name, lineno, "fix_minutes",
                "a never-removed defect cannot have fix effort",
            )
        defects.append(
            DefectRecord(
                row["project_id"], row["defect_id"], row["inject_phase"],
                remove_phase, fix_minutes, line=lineno,
            )
        )

    sizes = []
    seen_projects: set[str] = set()
    for lineno, row in _read_rows(size_path, SIZE_HEADER):
        if not row["project_id"]:
            raise LogParseError(size_name, lineno, "project_id", "must not be empty")
        if row["project_id"] in seen_projects:
            raise LogParseError(
                size_name, lineno, "project_id",
                f"project {row['project_id']!r} has more than one size record",
            )
        seen_projects.add(row["project_id"])
        try:
            loc = int(row["added_modified_loc"])
        except ValueError:
            raise LogParseError(
                size_name, lineno, "added_modified_loc",
                f"{row['added_modified_loc']!r} is not an integer",
            ) from None
        if loc < 0:
            raise LogParseError(
                size_name, lineno, "added_modified_loc", "added_modified_loc must be >= 0"
            )
        sizes.append(SizeRecord(row["project_id"], loc, line=lineno))
    if not sizes:
        raise LogParseError(size_name, 2, "project_id", "size file has no data rows")

    if org is None:
        org = Path(size_path).resolve().parent.name
    return LogBundle(tuple(effort), tuple(defects), tuple(sizes), org=org)


def write_logs(
    bundle: LogBundle,
    effort_path: str | Path,
    defects_path: str | Path,
    size_path: str | Path,
) -> None:
    """Re-serialize a bundle to the three CSV files (canonical column order)."""

    def _write(path, header, rows):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)

    _write(effort_path, EFFORT_HEADER, ((r.project_id, r.phase, _num(r.minutes)) for r in bundle.effort))
    _write(
        defects_path,
        DEFECTS_HEADER,
        (
            (r.project_id, r.defect_id, r.inject_phase, r.remove_phase or "", _num(r.fix_minutes))
            for r in bundle.defects
        ),
    )
    _write(size_path, SIZE_HEADER, ((r.project_id, r.added_modified_loc) for r in bundle.sizes))


def _num(value: float) -> str:
    # Integers without trailing .0 so rewritten files look like hand-written ones.
    return str(int(value)) if value == int(value) else repr(value)


def apply_aliases(bundle: LogBundle, aliases: dict[str, str]) -> LogBundle:
    """Rename log phase names via an explicit alias table (old -> new)."""
    if not aliases:
        return bundle

    def ren(name: str | None) -> str | None:
        if name is None:
            return None
        return aliases.get(name, name)

    return LogBundle(
        effort=tuple(replace(r, phase=ren(r.phase)) for r in bundle.effort),
        defects=tuple(
            replace(r, inject_phase=ren(r.inject_phase), remove_phase=ren(r.remove_phase))
            for r in bundle.defects
        ),
        sizes=bundle.sizes,
        org=bundle.org,
    )


def validate_logs(
    bundle: LogBundle, workflow: Workflow, outlier_multiple: float = 100.0
) -> list[Violation]:
    """Cross-check logs against a workflow; violations are data.

    Errors: unknown phase names, removal before injection in workflow order,
    and projects without a size record. Warnings: fix times beyond
    ``outlier_multiple`` times the phase median. Order-insensitive: the
    violation multiset does not depend on row order.
    """
    violations: list[Violation] = []
    order = {p.name: i for i, p in enumerate(workflow.phases)}
    sized = bundle.project_ids()

    def check_phase(name: str, context: str) -> bool:
        if name not in order:
            violations.append(
                Violation("unknown_phase", f"{context} references phase {name!r} not in workflow")
            )
            return False
        return True

    missing_size: set[str] = set()
    for rec in bundle.effort:
        check_phase(rec.phase, f"effort row for project {rec.project_id!r}")
        if rec.project_id not in sized:
            missing_size.add(rec.project_id)
    for rec in bundle.defects:
        ok_inject = check_phase(rec.inject_phase, f"defect {rec.defect_id!r}")
        ok_remove = rec.remove_phase is None or check_phase(
            rec.remove_phase, f"defect {rec.defect_id!r}"
        )
        if (
            ok_inject
            and ok_remove
            and rec.remove_phase is not None
            and order[rec.remove_phase] < order[rec.inject_phase]
        ):
            violations.append(
                Violation(
                    "removal_before_injection",
                    f"defect {rec.defect_id!r} in project {rec.project_id!r} removed in "
                    f"{rec.remove_phase!r} before its injection phase {rec.inject_phase!r}",
                )
            )
        if rec.project_id not in sized:
            missing_size.add(rec.project_id)
    for project in sorted(missing_size):
        violations.append(
            Violation("missing_size", f"project {project!r} has no size record")
        )

    by_phase: dict[str, list[DefectRecord]] = {}
    for rec in bundle.defects:
        if rec.remove_phase is not None:
            by_phase.setdefault(rec.remove_phase, []).append(rec)
    for phase_name, records in by_phase.items():
        median = statistics.median(r.fix_minutes for r in records)
        for rec in records:
            if rec.fix_minutes > outlier_multiple * median:
                violations.append(
                    Violation(
                        "fix_time_outlier",
                        f"defect {rec.defect_id!r} in project {rec.project_id!r}: fix time "
                        f"{rec.fix_minutes:g} min exceeds {outlier_multiple:g}x the "
                        f"{phase_name!r} median ({median:g} min)",
                        severity="warning",
                    )
                )
    return violations
