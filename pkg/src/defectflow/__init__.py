"""defectflow: deterministic cost-of-quality simulation and calibration.

Models a development workflow as a chain of defect-injecting and
defect-removing phases, calibrates the phase parameters from effort,
defect, and size logs, and quantifies what a static-analysis step buys by
comparing the with-tool and without-tool counterfactuals.
"""

from .model import (
    FIELD_PHASE_NAME,
    Phase,
    PhaseKind,
    PhaseOutcome,
    PhaseParams,
    ProjectProfile,
    Scenario,
    SimulationTrace,
    Violation,
    Workflow,
    dump_workflow,
    load_workflow,
    validate_workflow,
    workflow_from_dict,
    workflow_to_dict,
)
from .ingest import (
    DefectRecord,
    EffortRecord,
    LogBundle,
    LogParseError,
    SizeRecord,
    apply_aliases,
    load_logs,
    validate_logs,
    write_logs,
)
from .calibrate import (
    CalibrationError,
    CalibrationResult,
    CalibrationWarning,
    PhaseStats,
    audit_to_dict,
    calibrate_workflow,
    compute_phase_stats,
    derive_phase_params,
)
from .simulate import (
    InvalidWorkflowError,
    ModelError,
    development_density,
    development_escapes,
    run_phase,
    simulate,
)
from .scenario import (
    FailureReduction,
    PhasePairDelta,
    ScenarioDelta,
    break_even,
    compare,
    sweep,
)
from .report import render_delta, render_trace

__version__ = "0.1.0"
