"""Core domain types for defect-flow workflows.

A workflow is an ordered chain of phases. Creation-type phases add product
and latent defects, removal-type phases filter a yield fraction of the
defects present, and every removal costs its phase's average fix effort.
All types are immutable after construction; validation is data, not
exceptions, so a half-broken workflow can still be inspected and reported.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "PhaseKind",
    "Scenario",
    "PhaseParams",
    "Phase",
    "Workflow",
    "ProjectProfile",
    "PhaseOutcome",
    "SimulationTrace",
    "Violation",
    "validate_workflow",
    "workflow_to_dict",
    "workflow_from_dict",
    "dump_workflow",
    "load_workflow",
    "FIELD_PHASE_NAME",
]

# Terminal field-life pseudo-phase. When a workflow ends with this phase,
# scenario reporting measures development escapes at its entry.
FIELD_PHASE_NAME = "PLife"


class PhaseKind(str, Enum):
    """Reporting category for a phase. Metadata only: kind never restricts
    which parameters a phase may carry (review phases can inject, overhead
    phases can remove)."""

    CREATION = "creation"
    APPRAISAL = "appraisal"
    FAILURE = "failure"
    OVERHEAD = "overhead"


class Scenario(str, Enum):
    """Which yield column a simulation run uses."""

    WITH_SA = "with_sa"
    WITHOUT_SA = "without_sa"


@dataclass(frozen=True)
class PhaseParams:
    """Per-phase rates and costs.

    ``automated`` phases have no base effort: their only cost is fixing the
    defects they remove, so ``effort_rate`` must be None. For manual phases
    ``effort_rate`` is LOC per hour of base effort. ``injection_rate`` is
    defects per hour of base effort. ``fix_cost`` is average hours per defect
    removed; None means no defect was ever fixed in this phase.
    """

    effort_rate: float | None
    injection_rate: float
    yield_without_sa: float
    yield_with_sa: float
    fix_cost: float | None
    automated: bool = False

    def yield_for(self, scenario: Scenario) -> float:
        return self.yield_with_sa if scenario is Scenario.WITH_SA else self.yield_without_sa


@dataclass(frozen=True)
class Phase:
    """A named workflow step. ``sa_attributed`` marks phases whose gap
    between the two yield columns is attributed to a static-analysis tool."""

    name: str
    kind: PhaseKind
    params: PhaseParams
    sa_attributed: bool = False


@dataclass(frozen=True)
class Workflow:
    """Ordered phase sequence; order is both execution and defect-propagation
    order."""

    name: str
    phases: tuple[Phase, ...]

    def __post_init__(self) -> None:
        # Tolerate list inputs; immutability needs a tuple.
        if not isinstance(self.phases, tuple):
            object.__setattr__(self, "phases", tuple(self.phases))

    def phase_index(self, name: str) -> int:
        for i, phase in enumerate(self.phases):
            if phase.name == name:
                return i
        raise KeyError(f"no phase named {name!r} in workflow {self.name!r}")

    def phase(self, name: str) -> Phase:
        return self.phases[self.phase_index(name)]

    def phase_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.phases)

    def with_phase_params(self, name: str, **param_changes) -> "Workflow":
        """Copy of the workflow with one phase's params replaced."""
        idx = self.phase_index(name)
        phase = self.phases[idx]
        new_phase = replace(phase, params=replace(phase.params, **param_changes))
        phases = self.phases[:idx] + (new_phase,) + self.phases[idx + 1 :]
        return replace(self, phases=phases)


@dataclass(frozen=True)
class ProjectProfile:
    """Descriptive per-project data: org id, added-and-modified LOC, and
    optional team/effort/duration figures. Inputs to scenarios, never
    modeled quantities."""

    org: str
    size_loc: int
    team_size: int | None = None
    total_hours: float | None = None
    duration_days: int | None = None

    def __post_init__(self) -> None:
        if self.size_loc < 0:
            raise ValueError(f"size_loc must be >= 0, got {self.size_loc}")
        for attr in ("team_size", "total_hours", "duration_days"):
            value = getattr(self, attr)
            if value is not None and value <= 0:
                raise ValueError(f"{attr} must be positive when present, got {value}")


@dataclass(frozen=True)
class PhaseOutcome:
    """What one phase did to effort and to the latent defect pool."""

    phase_name: str
    base_effort: float
    fix_effort: float
    total_effort: float
    defects_entering: float
    defects_injected: float
    defects_removed: float
    defects_escaping: float


@dataclass(frozen=True)
class SimulationTrace:
    """Full propagation record for one workflow run at one size.

    ``escapes`` is the defect count remaining after the final phase;
    ``density_per_kloc`` is escapes per thousand LOC (0 for size 0).
    """

    workflow_name: str
    scenario: Scenario
    size_loc: float
    outcomes: tuple[PhaseOutcome, ...]
    total_effort: float
    escapes: float
    density_per_kloc: float

    def outcome(self, phase_name: str) -> PhaseOutcome:
        for outcome in self.outcomes:
            if outcome.phase_name == phase_name:
                return outcome
        raise KeyError(f"no outcome for phase {phase_name!r}")


@dataclass(frozen=True)
class Violation:
    """One invariant violation or advisory finding. Violations are data:
    producing them never raises."""

    code: str
    message: str
    severity: str = "error"  # "error" | "warning"

    def is_error(self) -> bool:
        return self.severity == "error"


def _finite(value: float | None) -> bool:
    return value is None or math.isfinite(value)


def validate_workflow(workflow: Workflow) -> list[Violation]:
    """Check every workflow invariant and return all violations found.

    Pure: same input, same report. An empty list means the workflow is valid;
    warnings (severity "warning") flag suspicious but legal data.
    """
    violations: list[Violation] = []
    if not workflow.phases:
        violations.append(Violation("empty_workflow", "workflow has no phases"))
        return violations

    seen: set[str] = set()
    flagged_dups: set[str] = set()
    for phase in workflow.phases:
        if not phase.name or not phase.name.strip():
            violations.append(Violation("blank_name", "phase has an empty name"))
        elif phase.name in seen and phase.name not in flagged_dups:
            violations.append(
                Violation("duplicate_name", f"duplicate phase name {phase.name!r}")
            )
            flagged_dups.add(phase.name)
        seen.add(phase.name)

    for phase in workflow.phases:
        p = phase.params
        where = f"phase {phase.name!r}"
        for label, value in (
            ("effort_rate", p.effort_rate),
            ("injection_rate", p.injection_rate),
            ("yield_without_sa", p.yield_without_sa),
            ("yield_with_sa", p.yield_with_sa),
            ("fix_cost", p.fix_cost),
        ):
            if not _finite(value):
                violations.append(
                    Violation("non_finite", f"{where}: {label} is not finite")
                )
        for label, y in (
            ("yield_without_sa", p.yield_without_sa),
            ("yield_with_sa", p.yield_with_sa),
        ):
            if math.isfinite(y) and not 0.0 <= y <= 1.0:
                violations.append(
                    Violation("yield_range", f"{where}: {label} {y} outside [0, 1]")
                )
        if math.isfinite(p.injection_rate) and p.injection_rate < 0:
            violations.append(
                Violation(
                    "negative_injection",
                    f"{where}: injection_rate {p.injection_rate} is negative",
                )
            )
        if p.fix_cost is not None and math.isfinite(p.fix_cost) and p.fix_cost < 0:
            violations.append(
                Violation("negative_fix_cost", f"{where}: fix_cost {p.fix_cost} is negative")
            )
        if p.automated:
            if p.effort_rate is not None:
                violations.append(
                    Violation(
                        "automated_with_rate",
                        f"{where}: automated phase must not carry an effort_rate",
                    )
                )
        else:
            if p.effort_rate is None:
                violations.append(
                    Violation(
                        "missing_rate", f"{where}: non-automated phase needs an effort_rate"
                    )
                )
            elif math.isfinite(p.effort_rate) and p.effort_rate <= 0:
                violations.append(
                    Violation(
                        "bad_rate",
                        f"{where}: effort_rate {p.effort_rate} must be positive",
                    )
                )
        removes = (math.isfinite(p.yield_without_sa) and p.yield_without_sa > 0) or (
            math.isfinite(p.yield_with_sa) and p.yield_with_sa > 0
        )
        if removes and p.fix_cost is None:
            violations.append(
                Violation(
                    "missing_fix_cost",
                    f"{where}: a phase with positive yield needs a fix_cost",
                )
            )
        if removes and p.fix_cost == 0.0:
            violations.append(
                Violation(
                    "free_fixes",
                    f"{where}: fix_cost 0.0 means removals cost nothing",
                    severity="warning",
                )
            )
        if not phase.sa_attributed and p.yield_without_sa != p.yield_with_sa:
            violations.append(
                Violation(
                    "sa_yield_mismatch",
                    f"{where}: yields differ but phase is not sa_attributed",
                )
            )
    return violations


# --- workflow document (JSON) schema ---------------------------------------

_PHASE_FIELDS = (
    "name",
    "kind",
    "automated",
    "effort_rate_loc_per_hr",
    "injection_rate_def_per_hr",
    "yield_without_sa",
    "yield_with_sa",
    "fix_cost_hr_per_def",
    "sa_attributed",
)


def workflow_to_dict(workflow: Workflow) -> dict:
    return {
        "name": workflow.name,
        "phases": [
            {
                "name": phase.name,
                "kind": phase.kind.value,
                "automated": phase.params.automated,
                "effort_rate_loc_per_hr": phase.params.effort_rate,
                "injection_rate_def_per_hr": phase.params.injection_rate,
                "yield_without_sa": phase.params.yield_without_sa,
                "yield_with_sa": phase.params.yield_with_sa,
                "fix_cost_hr_per_def": phase.params.fix_cost,
                "sa_attributed": phase.sa_attributed,
            }
            for phase in workflow.phases
        ],
    }


class WorkflowDocumentError(ValueError):
    """Raised when a workflow document does not match the schema."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise WorkflowDocumentError(message)


def workflow_from_dict(doc: dict) -> Workflow:
    _require(isinstance(doc, dict), "workflow document must be a JSON object")
    _require(isinstance(doc.get("name"), str), "workflow 'name' must be a string")
    _require(isinstance(doc.get("phases"), list), "workflow 'phases' must be a list")
    phases = []
    for i, entry in enumerate(doc["phases"]):
        _require(isinstance(entry, dict), f"phases[{i}] must be an object")
        unknown = set(entry) - set(_PHASE_FIELDS)
        _require(not unknown, f"phases[{i}] has unknown fields: {sorted(unknown)}")
        missing = set(_PHASE_FIELDS) - set(entry)
        _require(not missing, f"phases[{i}] is missing fields: {sorted(missing)}")
        try:
            kind = PhaseKind(entry["kind"])
        except ValueError:
            raise WorkflowDocumentError(
                f"phases[{i}]: unknown kind {entry['kind']!r}"
            ) from None
        automated = entry["automated"]
        _require(isinstance(automated, bool), f"phases[{i}]: 'automated' must be boolean")
        rate = entry["effort_rate_loc_per_hr"]
        if automated:
            _require(rate is None, f"phases[{i}]: automated requires a null effort rate")
        _require(
            rate is None or isinstance(rate, (int, float)),
            f"phases[{i}]: effort_rate_loc_per_hr must be a number or null",
        )
        fix = entry["fix_cost_hr_per_def"]
        _require(
            fix is None or isinstance(fix, (int, float)),
            f"phases[{i}]: fix_cost_hr_per_def must be a number or null",
        )
        for key in ("injection_rate_def_per_hr", "yield_without_sa", "yield_with_sa"):
            _require(
                isinstance(entry[key], (int, float)),
                f"phases[{i}]: {key} must be a number",
            )
        phases.append(
            Phase(
                name=entry["name"],
                kind=kind,
                params=PhaseParams(
                    effort_rate=None if rate is None else float(rate),
                    injection_rate=float(entry["injection_rate_def_per_hr"]),
                    yield_without_sa=float(entry["yield_without_sa"]),
                    yield_with_sa=float(entry["yield_with_sa"]),
                    fix_cost=None if fix is None else float(fix),
                    automated=automated,
                ),
                sa_attributed=bool(entry["sa_attributed"]),
            )
        )
    return Workflow(name=doc["name"], phases=tuple(phases))


def dump_workflow(workflow: Workflow) -> str:
    return json.dumps(workflow_to_dict(workflow), indent=2) + "\n"


def load_workflow(path: str | Path) -> Workflow:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkflowDocumentError(f"{path}: invalid JSON ({exc})") from None
    return workflow_from_dict(doc)
