"""Parameter derivation from effort/defect/size logs.

Per phase, over all projects in a bundle (pooled sums, effort-weighted):

    S = total added-and-modified LOC
    T = logged effort hours, F = fix hours of defects removed here
    B = T - F (base effort), I = defects injected here, R = removed here
    E = defects entering (injected strictly earlier, not yet removed)

    effort_rate    = S / B         (or automated when the phase has no base effort)
    injection_rate = I / B
    yield          = R / (E + I)   (0 when nothing was present)
    fix_cost       = F / R         (undefined when nothing was removed)

Injection is normalized by base effort, not total effort: that is the one
convention under which a single forward pass of the simulator reproduces a
single project's logs exactly. Minutes convert to hours exactly once, here.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from .ingest import LogBundle
from .model import Phase, PhaseParams, Workflow

__all__ = [
    "PhaseStats",
    "CalibrationError",
    "CalibrationWarning",
    "CalibrationResult",
    "compute_phase_stats",
    "derive_phase_params",
    "calibrate_workflow",
    "audit_to_dict",
]

# An automated phase's logged effort must be all fix effort; tolerate only
# float residue from summing the two logs separately.
_AUTOMATED_BASE_TOL = 1e-6


class CalibrationError(ValueError):
    """Logs cannot support the requested derivation."""


class CalibrationWarning(UserWarning):
    """Non-fatal calibration finding (e.g. a phase absent from all logs)."""


@dataclass(frozen=True)
class PhaseStats:
    """Pooled per-phase sums feeding the derivations; kept for the audit
    report so every derived parameter can be recomputed by hand."""

    phase: str
    effort_hours: float  # T
    fix_hours: float  # F
    base_hours: float  # B
    injected: int  # I
    removed: int  # R
    entering: int  # E

    @property
    def present(self) -> int:
        return self.entering + self.injected


def compute_phase_stats(bundle: LogBundle, workflow: Workflow) -> dict[str, PhaseStats]:
    """Pooled sums for every workflow phase, in workflow order.

    Requires logs already validated against the workflow: unknown phase
    names here are a hard error, not a report entry.
    """
    order = {p.name: i for i, p in enumerate(workflow.phases)}
    n = len(workflow.phases)
    effort_min = [0.0] * n
    fix_min = [0.0] * n
    injected = [0] * n
    removed = [0] * n

    def index(name: str, context: str) -> int:
        if name not in order:
            raise CalibrationError(f"{context} references unknown phase {name!r}")
        return order[name]

    for rec in bundle.effort:
        effort_min[index(rec.phase, "effort log")] += rec.minutes
    for rec in bundle.defects:
        injected[index(rec.inject_phase, f"defect {rec.defect_id!r}")] += 1
        if rec.remove_phase is not None:
            j = index(rec.remove_phase, f"defect {rec.defect_id!r}")
            removed[j] += 1
            fix_min[j] += rec.fix_minutes

    stats: dict[str, PhaseStats] = {}
    cumulative_injected = 0
    cumulative_removed = 0
    for i, phase in enumerate(workflow.phases):
        entering = cumulative_injected - cumulative_removed
        effort_hours = effort_min[i] / 60.0
        fix_hours = fix_min[i] / 60.0
        stats[phase.name] = PhaseStats(
            phase=phase.name,
            effort_hours=effort_hours,
            fix_hours=fix_hours,
            base_hours=effort_hours - fix_hours,
            injected=injected[i],
            removed=removed[i],
            entering=entering,
        )
        cumulative_injected += injected[i]
        cumulative_removed += removed[i]
    return stats


def _derive(
    total_size: int, phase: Phase, stats: PhaseStats
) -> tuple[PhaseParams, str | None]:
    """Derived params plus an optional warning message."""
    name = phase.name
    absent = (
        stats.effort_hours == 0
        and stats.injected == 0
        and stats.removed == 0
        and stats.fix_hours == 0
    )
    if absent:
        # No logged activity: the only representation that reproduces the
        # logs is a no-op phase (zero base effort, zero rates).
        params = PhaseParams(
            effort_rate=None,
            injection_rate=0.0,
            yield_without_sa=0.0,
            yield_with_sa=0.0,
            fix_cost=None,
            automated=True,
        )
        return params, f"phase {name!r} never appears in the logs; calibrated as a no-op"

    base = stats.base_hours
    if phase.params.automated:
        if abs(base) > _AUTOMATED_BASE_TOL * max(1.0, stats.effort_hours):
            raise CalibrationError(
                f"automated phase {name!r} has {base:.4f} base hours; its logged "
                f"effort must equal its fix effort"
            )
        if stats.injected:
            raise CalibrationError(
                f"automated phase {name!r} has {stats.injected} logged injections; "
                f"injection needs base effort to scale against"
            )
        effort_rate = None
        injection_rate = 0.0
    else:
        if base <= 0:
            raise CalibrationError(
                f"phase {name!r} has no base effort (T={stats.effort_hours:.4f} h, "
                f"F={stats.fix_hours:.4f} h); cannot derive an effort rate"
            )
        effort_rate = total_size / base
        injection_rate = stats.injected / base

    y = stats.removed / stats.present if stats.present > 0 else 0.0
    fix_cost = stats.fix_hours / stats.removed if stats.removed > 0 else None
    params = PhaseParams(
        effort_rate=effort_rate,
        injection_rate=injection_rate,
        yield_without_sa=y,
        yield_with_sa=y,
        fix_cost=fix_cost,
        automated=phase.params.automated,
    )
    return params, None


def derive_phase_params(bundle: LogBundle, workflow: Workflow, phase_name: str) -> PhaseParams:
    """Table-4-style parameters for one phase from pooled logs."""
    stats = compute_phase_stats(bundle, workflow)
    if phase_name not in stats:
        raise CalibrationError(f"workflow has no phase named {phase_name!r}")
    params, warning = _derive(bundle.total_size(), workflow.phase(phase_name), stats[phase_name])
    if warning:
        warnings.warn(warning, CalibrationWarning, stacklevel=2)
    return params


@dataclass(frozen=True)
class CalibrationResult:
    workflow: Workflow
    stats: dict[str, PhaseStats]
    total_size_loc: int
    org: str
    warnings: tuple[str, ...]


def calibrate_workflow(
    bundle: LogBundle,
    workflow: Workflow,
    sa_phase_names: frozenset[str] | set[str] = frozenset(),
    sa_yield_overrides: dict[str, float] | None = None,
) -> CalibrationResult:
    """Replace every phase's params with values derived from the logs.

    Phases in ``sa_phase_names`` become sa_attributed: the derived yield is
    their with-SA yield and ``sa_yield_overrides`` supplies the without-SA
    counterfactual (default 0, the dedicated-tool-phase case; shared phases
    where the tool only adds to an existing manual yield need an explicit
    override).
    """
    overrides = dict(sa_yield_overrides or {})
    known = set(workflow.phase_names())
    for name in sa_phase_names:
        if name not in known:
            raise CalibrationError(f"sa phase {name!r} is not in the workflow")
    for name, value in overrides.items():
        if name not in known:
            raise CalibrationError(f"yield override references unknown phase {name!r}")
        if name not in sa_phase_names:
            raise CalibrationError(
                f"yield override for {name!r} is meaningless: phase is not in sa_phase_names"
            )
        if not 0.0 <= value <= 1.0:
            raise CalibrationError(f"yield override for {name!r} must be in [0, 1], got {value}")

    stats = compute_phase_stats(bundle, workflow)
    total_size = bundle.total_size()
    collected: list[str] = []
    phases: list[Phase] = []
    for phase in workflow.phases:
        params, warning = _derive(total_size, phase, stats[phase.name])
        if warning:
            collected.append(warning)
        sa = phase.name in sa_phase_names
        if sa:
            params = replace(
                params, yield_without_sa=overrides.get(phase.name, 0.0)
            )
        phases.append(replace(phase, params=params, sa_attributed=sa))
    calibrated = replace(workflow, phases=tuple(phases))
    return CalibrationResult(
        workflow=calibrated,
        stats=stats,
        total_size_loc=total_size,
        org=bundle.org,
        warnings=tuple(collected),
    )


def audit_to_dict(result: CalibrationResult) -> dict:
    """Audit report: raw sums next to derived values, so the parameters
    can be recomputed under any normalization convention."""
    rows = []
    for phase in result.workflow.phases:
        s = result.stats[phase.name]
        p = phase.params
        rows.append(
            {
                "phase": s.phase,
                "effort_hours": s.effort_hours,
                "fix_hours": s.fix_hours,
                "base_hours": s.base_hours,
                "injected": s.injected,
                "removed": s.removed,
                "entering": s.entering,
                "present": s.present,
                "effort_rate_loc_per_hr": p.effort_rate,
                "injection_rate_def_per_hr": p.injection_rate,
                "yield_without_sa": p.yield_without_sa,
                "yield_with_sa": p.yield_with_sa,
                "fix_cost_hr_per_def": p.fix_cost,
                "automated": p.automated,
                "sa_attributed": phase.sa_attributed,
            }
        )
    return {
        "org": result.org,
        "total_size_loc": result.total_size_loc,
        "warnings": list(result.warnings),
        "phases": rows,
    }
