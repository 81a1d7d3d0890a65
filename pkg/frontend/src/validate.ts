/**
 * Client-side duplicates of the server's phase parameter rules, for fast
 * inline feedback. The server remains the authority: anything accepted here
 * is re-validated on every request.
 */

import type { EditableField, PhaseDoc } from './types.js';

export interface FieldError {
  phase: string;
  field: EditableField;
  message: string;
}

export function checkField(
  phase: PhaseDoc,
  field: EditableField,
  value: number | null,
): string | null {
  if (value !== null && !Number.isFinite(value)) {
    return 'must be a finite number';
  }
  switch (field) {
    case 'yield_without_sa':
    case 'yield_with_sa':
      if (value === null) return 'yield is required';
      if (value < 0 || value > 1) return 'yield must be between 0 and 1';
      return null;
    case 'injection_rate_def_per_hr':
      if (value === null) return 'injection rate is required';
      if (value < 0) return 'injection rate must be ≥ 0';
      return null;
    case 'fix_cost_hr_per_def':
      if (value !== null && value < 0) return 'fix cost must be ≥ 0';
      return null;
    case 'effort_rate_loc_per_hr':
      if (phase.automated) {
        return value === null ? null : 'automated phases have no effort rate';
      }
      if (value === null) return 'effort rate is required';
      if (value <= 0) return 'effort rate must be positive';
      return null;
  }
}

/** Whole-phase rules that span fields; run after any accepted edit. */
export function checkPhase(phase: PhaseDoc): FieldError[] {
  const errors: FieldError[] = [];
  const push = (field: EditableField, message: string) =>
    errors.push({ phase: phase.name, field, message });

  for (const field of [
    'effort_rate_loc_per_hr',
    'injection_rate_def_per_hr',
    'yield_without_sa',
    'yield_with_sa',
    'fix_cost_hr_per_def',
  ] as EditableField[]) {
    const message = checkField(phase, field, phase[field]);
    if (message) push(field, message);
  }
  const removes = phase.yield_without_sa > 0 || phase.yield_with_sa > 0;
  if (removes && phase.fix_cost_hr_per_def === null) {
    push('fix_cost_hr_per_def', 'a removing phase needs a fix cost');
  }
  if (!phase.sa_attributed && phase.yield_without_sa !== phase.yield_with_sa) {
    push(
      'yield_with_sa',
      'yields differ: mark the phase as tool-attributed or make them equal',
    );
  }
  return errors;
}

export function workflowIsSubmittable(phases: PhaseDoc[]): boolean {
  return phases.every((phase) => checkPhase(phase).length === 0);
}
