"""Counterfactual comparison: what does static analysis buy.

The two scenarios of a comparison run the same workflow at the same size,
using the with-SA and without-SA yield columns. The without-SA run keeps
every phase's base effort (manual tools live inside review phases whose
review time does not change) and costs nothing for dedicated automated tool
phases, so the tool's price is exactly the fix effort of what it finds.

Escapes and densities are development figures: measured at entry to the
terminal field-life phase when the workflow has one, because field removals
are not development removals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import PhaseKind, Scenario, SimulationTrace, Workflow
from .simulate import development_density, development_escapes, simulate

__all__ = [
    "PhasePairDelta",
    "FailureReduction",
    "ScenarioDelta",
    "compare",
    "sweep",
    "break_even",
    "SWEEPABLE_PARAMETERS",
]

SWEEPABLE_PARAMETERS = ("yield_with_sa", "fix_cost", "injection_rate", "effort_rate")

BREAK_EVEN_TOLERANCE = 1e-6
BREAK_EVEN_SCAN_STEP = 1e-3


@dataclass(frozen=True)
class PhasePairDelta:
    """Per-phase counterfactual difference, positive when the with-SA run
    has less of the quantity."""

    phase: str
    without: float
    with_: float

    @property
    def delta(self) -> float:
        return self.without - self.with_


@dataclass(frozen=True)
class FailureReduction:
    """Fractional drop in removals at one failure-kind phase; None when the
    without-SA run removes nothing there."""

    phase: str
    reduction_fraction: float | None


@dataclass(frozen=True)
class ScenarioDelta:
    """Everything the with/without comparison produced."""

    trace_with: SimulationTrace
    trace_without: SimulationTrace
    effort_delta: float  # hours saved by the with-SA run (without - with)
    escape_reduction_fraction: float | None  # None when the baseline has no escapes
    density_with: float
    density_without: float
    per_phase_removal_delta: tuple[PhasePairDelta, ...]
    per_phase_effort_delta: tuple[PhasePairDelta, ...]
    failure_removal_reduction: tuple[FailureReduction, ...]


def compare(workflow: Workflow, size_loc: float) -> ScenarioDelta:
    """Run both scenarios and assemble the deltas."""
    trace_with = simulate(workflow, size_loc, Scenario.WITH_SA)
    trace_without = simulate(workflow, size_loc, Scenario.WITHOUT_SA)

    removal_deltas = []
    effort_deltas = []
    failure_reductions = []
    for phase, o_with, o_without in zip(
        workflow.phases, trace_with.outcomes, trace_without.outcomes
    ):
        removal_deltas.append(
            PhasePairDelta(phase.name, o_without.defects_removed, o_with.defects_removed)
        )
        effort_deltas.append(
            PhasePairDelta(phase.name, o_without.total_effort, o_with.total_effort)
        )
        if phase.kind is PhaseKind.FAILURE:
            if o_without.defects_removed > 0:
                fraction = (
                    o_without.defects_removed - o_with.defects_removed
                ) / o_without.defects_removed
            else:
                fraction = None
            failure_reductions.append(FailureReduction(phase.name, fraction))

    escapes_with = development_escapes(trace_with)
    escapes_without = development_escapes(trace_without)
    if escapes_without > 0:
        escape_reduction = (escapes_without - escapes_with) / escapes_without
    else:
        escape_reduction = None

    return ScenarioDelta(
        trace_with=trace_with,
        trace_without=trace_without,
        effort_delta=trace_without.total_effort - trace_with.total_effort,
        escape_reduction_fraction=escape_reduction,
        density_with=development_density(trace_with),
        density_without=development_density(trace_without),
        per_phase_removal_delta=tuple(removal_deltas),
        per_phase_effort_delta=tuple(effort_deltas),
        failure_removal_reduction=tuple(failure_reductions),
    )


def _check_sweep_value(workflow: Workflow, phase_name: str, parameter: str, value, position: int):
    where = f"values[{position}] = {value!r} for {phase_name}.{parameter}"
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{where}: not a number")
    if parameter == "yield_with_sa":
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{where}: yield must be in [0, 1]")
    elif parameter in ("fix_cost", "injection_rate"):
        if value < 0:
            raise ValueError(f"{where}: must be >= 0")
    elif parameter == "effort_rate":
        if workflow.phase(phase_name).params.automated:
            raise ValueError(f"{where}: phase is automated and has no effort rate")
        if value <= 0:
            raise ValueError(f"{where}: must be positive")
    else:
        raise ValueError(
            f"unknown sweep parameter {parameter!r}; choose one of {SWEEPABLE_PARAMETERS}"
        )


def sweep(
    workflow: Workflow,
    size_loc: float,
    target: tuple[str, str],
    values: list[float],
) -> list[tuple[float, ScenarioDelta]]:
    """One comparison per candidate value of a single phase parameter.

    The input workflow is never mutated; every entry gets its own substituted
    copy. Sweeping yield_with_sa requires an sa_attributed phase, otherwise
    the substituted workflow would break the equal-yields invariant.
    """
    phase_name, parameter = target
    phase = workflow.phase(phase_name)  # raises KeyError for unknown phases
    if parameter not in SWEEPABLE_PARAMETERS:
        raise ValueError(
            f"unknown sweep parameter {parameter!r}; choose one of {SWEEPABLE_PARAMETERS}"
        )
    if parameter == "yield_with_sa" and not phase.sa_attributed:
        raise ValueError(
            f"cannot sweep yield_with_sa on {phase_name!r}: phase is not sa_attributed"
        )
    for i, value in enumerate(values):
        _check_sweep_value(workflow, phase_name, parameter, value, i)

    results = []
    for value in values:
        variant = workflow.with_phase_params(phase_name, **{parameter: float(value)})
        results.append((float(value), compare(variant, size_loc)))
    return results


def break_even(workflow: Workflow, size_loc: float, sa_phase: str) -> float | None:
    """Smallest with-SA yield for ``sa_phase`` from which the tool never
    loses effort (effort_delta >= 0 for every yield at or above it).

    Effort delta is monotone in this yield whenever the per-defect cost
    downstream of the phase exceeds its own fix cost; then the answer is a
    bisection root to 1e-6. If a coarse probe finds non-monotone behavior,
    falls back to a 1e-3-step scan and returns the smallest qualifying grid
    point. None when even a perfect yield loses effort.
    """
    phase = workflow.phase(sa_phase)  # raises KeyError for unknown phases
    if not phase.sa_attributed:
        raise ValueError(f"{sa_phase!r} is not an sa_attributed phase")

    def delta_at(y: float) -> float:
        variant = workflow.with_phase_params(sa_phase, yield_with_sa=y)
        return compare(variant, size_loc).effort_delta

    probe = [i / 10 for i in range(11)]
    probe_values = [delta_at(y) for y in probe]
    monotone = all(b >= a - 1e-12 for a, b in zip(probe_values, probe_values[1:]))

    if monotone:
        if probe_values[-1] < 0:
            return None
        if probe_values[0] >= 0:
            return 0.0
        lo, hi = 0.0, 1.0
        while hi - lo > BREAK_EVEN_TOLERANCE:
            mid = (lo + hi) / 2
            if delta_at(mid) >= 0:
                hi = mid
            else:
                lo = mid
        return hi

    return _scan_break_even(delta_at, BREAK_EVEN_SCAN_STEP)


def _scan_break_even(delta_at, step: float) -> float | None:
    """Dense-scan fallback: smallest grid point from which the delta stays
    non-negative all the way to yield 1."""
    n = round(1.0 / step)
    threshold = None
    for i in range(n, -1, -1):
        y = i / n
        if delta_at(y) >= 0:
            threshold = y
        else:
            break
    return threshold
