/**
 * Mirrors of the backend's JSON documents. The UI never computes model
 * quantities from these; it only formats and plots the fields.
 */

export type PhaseKind = 'creation' | 'appraisal' | 'failure' | 'overhead';

export interface PhaseDoc {
  name: string;
  kind: PhaseKind;
  automated: boolean;
  effort_rate_loc_per_hr: number | null;
  injection_rate_def_per_hr: number;
  yield_without_sa: number;
  yield_with_sa: number;
  fix_cost_hr_per_def: number | null;
  sa_attributed: boolean;
}

export interface WorkflowDoc {
  name: string;
  phases: PhaseDoc[];
}

export interface OutcomeDoc {
  phase_name: string;
  base_effort: number;
  fix_effort: number;
  total_effort: number;
  defects_entering: number;
  defects_injected: number;
  defects_removed: number;
  defects_escaping: number;
}

export interface TraceDoc {
  workflow_name: string;
  scenario: 'with_sa' | 'without_sa';
  size_loc: number;
  outcomes: OutcomeDoc[];
  total_effort: number;
  escapes: number;
  density_per_kloc: number;
}

export interface PairDeltaDoc {
  phase: string;
  without: number;
  with: number;
  delta: number;
}

export interface FailureReductionDoc {
  phase: string;
  reduction_fraction: number | null;
}

export interface DeltaDoc {
  trace_with: TraceDoc;
  trace_without: TraceDoc;
  effort_delta: number;
  escape_reduction_fraction: number | null;
  density_with: number;
  density_without: number;
  per_phase_removal_delta: PairDeltaDoc[];
  per_phase_effort_delta: PairDeltaDoc[];
  failure_removal_reduction: FailureReductionDoc[];
}

export interface SweepEntryDoc {
  value: number;
  delta: DeltaDoc;
}

/** Numeric grid columns the user can edit. */
export type EditableField =
  | 'effort_rate_loc_per_hr'
  | 'injection_rate_def_per_hr'
  | 'yield_without_sa'
  | 'yield_with_sa'
  | 'fix_cost_hr_per_def';
