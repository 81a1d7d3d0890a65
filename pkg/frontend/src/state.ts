/**
 * Pure application state and transitions. The DOM layer applies these and
 * re-renders; tests drive them directly.
 */

import type { DeltaDoc, EditableField, PhaseDoc, WorkflowDoc } from './types.js';
import { checkField, checkPhase, workflowIsSubmittable, type FieldError } from './validate.js';

export interface AppState {
  workflow: WorkflowDoc | null;
  size: number;
  delta: DeltaDoc | null;
  fieldErrors: FieldError[];
  /** Error banner text; null when the last request succeeded. */
  banner: string | null;
}

export function initialState(size = 178505): AppState {
  return { workflow: null, size, delta: null, fieldErrors: [], banner: null };
}

export function loadWorkflow(state: AppState, workflow: WorkflowDoc): AppState {
  return { ...state, workflow, fieldErrors: [], banner: null };
}

export interface EditResult {
  state: AppState;
  /** True when the edit passed validation and a comparison should run. */
  submit: boolean;
}

function replacePhase(workflow: WorkflowDoc, index: number, phase: PhaseDoc): WorkflowDoc {
  const phases = workflow.phases.slice();
  phases[index] = phase;
  return { ...workflow, phases };
}

function errorsFor(workflow: WorkflowDoc): FieldError[] {
  return workflow.phases.flatMap((phase) => checkPhase(phase));
}

/** Parse a grid cell; empty string means null (undefined parameter). */
export function parseCell(raw: string): number | null | undefined {
  const trimmed = raw.trim();
  if (trimmed === '') return null;
  const value = Number(trimmed);
  return Number.isNaN(value) ? undefined : value;
}

export function applyEdit(
  state: AppState,
  phaseIndex: number,
  field: EditableField,
  raw: string,
): EditResult {
  if (!state.workflow) return { state, submit: false };
  const phase = state.workflow.phases[phaseIndex];
  if (!phase) return { state, submit: false };

  const value = parseCell(raw);
  if (value === undefined) {
    const error = { phase: phase.name, field, message: 'not a number' };
    return { state: { ...state, fieldErrors: upsert(state.fieldErrors, error) }, submit: false };
  }
  const message = checkField(phase, field, value);
  if (message) {
    const error = { phase: phase.name, field, message };
    return { state: { ...state, fieldErrors: upsert(state.fieldErrors, error) }, submit: false };
  }
  const edited = replacePhase(state.workflow, phaseIndex, { ...phase, [field]: value });
  const fieldErrors = errorsFor(edited);
  const next = { ...state, workflow: edited, fieldErrors };
  return { state: next, submit: workflowIsSubmittable(edited.phases) };
}

export function toggleSaAttribution(state: AppState, phaseIndex: number): EditResult {
  if (!state.workflow) return { state, submit: false };
  const phase = state.workflow.phases[phaseIndex];
  if (!phase) return { state, submit: false };
  const toggled = { ...phase, sa_attributed: !phase.sa_attributed };
  const edited = replacePhase(state.workflow, phaseIndex, toggled);
  const fieldErrors = errorsFor(edited);
  return {
    state: { ...state, workflow: edited, fieldErrors },
    submit: workflowIsSubmittable(edited.phases),
  };
}

function upsert(errors: FieldError[], error: FieldError): FieldError[] {
  const rest = errors.filter((e) => !(e.phase === error.phase && e.field === error.field));
  return [...rest, error];
}

export function setSize(state: AppState, raw: string): EditResult {
  const value = Number(raw);
  if (!Number.isInteger(value) || value < 0) {
    return { state: { ...state, banner: 'size must be a non-negative integer' }, submit: false };
  }
  return { state: { ...state, size: value, banner: null }, submit: true };
}

/** Successful comparison: replace results, clear the banner. */
export function compareSucceeded(state: AppState, delta: DeltaDoc): AppState {
  return { ...state, delta, banner: null };
}

/** Failed comparison: show the banner, keep the previous results visible. */
export function compareFailed(state: AppState, message: string): AppState {
  return { ...state, banner: message };
}

export function errorFor(
  errors: FieldError[],
  phase: string,
  field: EditableField,
): string | null {
  const hit = errors.find((e) => e.phase === phase && e.field === field);
  return hit ? hit.message : null;
}
