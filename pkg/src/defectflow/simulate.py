"""Tank-and-filter propagation engine.

Each phase adds base effort proportional to size, injects defects in
proportion to that base effort, removes a yield fraction of the defects
present (latent pool plus its own injections), and charges the phase fix
cost per removal. Deterministic and pure: defect counts are expected
values, so fractional defects are meaningful.
"""

from __future__ import annotations

from .model import (
    FIELD_PHASE_NAME,
    Phase,
    PhaseOutcome,
    Scenario,
    SimulationTrace,
    Workflow,
    validate_workflow,
)

__all__ = [
    "run_phase",
    "simulate",
    "development_escapes",
    "development_density",
    "InvalidWorkflowError",
    "ModelError",
]


class ModelError(ValueError):
    """An arithmetically impossible configuration (e.g. removals with no
    fix cost). Validated workflows never trigger this."""


class InvalidWorkflowError(ValueError):
    """Simulation refused because the workflow fails validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        details = "; ".join(v.message for v in self.violations)
        super().__init__(f"workflow is invalid: {details}")


def run_phase(
    latent_defects: float, size_loc: float, phase: Phase, scenario: Scenario
) -> PhaseOutcome:
    """Propagate the latent pool through one phase.

    Automated phases contribute zero base effort; injection multiplies base
    effort only, so fixing defects never injects new ones.
    """
    if latent_defects < 0:
        raise ModelError(f"latent_defects must be >= 0, got {latent_defects}")
    p = phase.params
    base_effort = 0.0 if p.automated else size_loc / p.effort_rate
    injected = p.injection_rate * base_effort
    pool = latent_defects + injected
    removed = p.yield_for(scenario) * pool
    if removed == 0.0:
        fix_effort = 0.0
    elif p.fix_cost is None:
        raise ModelError(
            f"phase {phase.name!r} removes defects but has no fix_cost"
        )
    else:
        fix_effort = removed * p.fix_cost
    return PhaseOutcome(
        phase_name=phase.name,
        base_effort=base_effort,
        fix_effort=fix_effort,
        total_effort=base_effort + fix_effort,
        defects_entering=latent_defects,
        defects_injected=injected,
        defects_removed=removed,
        defects_escaping=pool - removed,
    )


def simulate(workflow: Workflow, size_loc: float, scenario: Scenario) -> SimulationTrace:
    """Fold the whole workflow over an initially empty defect tank.

    Upstream/inherited defects are modeled by prepending a zero-effort phase
    with positive injection; the engine itself always starts from zero.
    """
    errors = [v for v in validate_workflow(workflow) if v.is_error()]
    if errors:
        raise InvalidWorkflowError(errors)
    if size_loc < 0:
        raise ModelError(f"size_loc must be >= 0, got {size_loc}")

    outcomes: list[PhaseOutcome] = []
    latent = 0.0
    for phase in workflow.phases:
        outcome = run_phase(latent, size_loc, phase, scenario)
        outcomes.append(outcome)
        latent = outcome.defects_escaping
    total_effort = sum(o.total_effort for o in outcomes)
    escapes = outcomes[-1].defects_escaping
    density = escapes / (size_loc / 1000.0) if size_loc > 0 else 0.0
    return SimulationTrace(
        workflow_name=workflow.name,
        scenario=scenario,
        size_loc=size_loc,
        outcomes=tuple(outcomes),
        total_effort=total_effort,
        escapes=escapes,
        density_per_kloc=density,
    )


def development_escapes(trace: SimulationTrace) -> float:
    """Defects escaping development, i.e. entering field life.

    When the trace ends in the terminal field-life phase the count is taken
    at that phase's entry (field removals are not development removals);
    otherwise it is the final escape count.
    """
    last = trace.outcomes[-1]
    if last.phase_name == FIELD_PHASE_NAME:
        return last.defects_entering
    return last.defects_escaping


def development_density(trace: SimulationTrace) -> float:
    """Development escapes per KLOC (0 for size 0)."""
    if trace.size_loc <= 0:
        return 0.0
    return development_escapes(trace) / (trace.size_loc / 1000.0)
