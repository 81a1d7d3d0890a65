/**
 * Editable parameter grid: one row per phase, the workflow document's
 * parameter columns as inputs. Rendering is a pure string function; the app shell owns event
 * wiring via the data-phase/data-field attributes.
 */

import { errorFor } from './state.js';
import type { EditableField, WorkflowDoc } from './types.js';
import type { FieldError } from './validate.js';

export const GRID_COLUMNS: { field: EditableField; label: string }[] = [
  { field: 'effort_rate_loc_per_hr', label: 'Effort rate (LOC/h)' },
  { field: 'injection_rate_def_per_hr', label: 'Injection (Def/h)' },
  { field: 'yield_without_sa', label: 'Yield without' },
  { field: 'yield_with_sa', label: 'Yield with' },
  { field: 'fix_cost_hr_per_def', label: 'Fix cost (h/Def)' },
];

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function cellValue(value: number | null): string {
  return value === null ? '' : String(value);
}

export function renderGrid(workflow: WorkflowDoc, fieldErrors: FieldError[] = []): string {
  const header = GRID_COLUMNS.map((c) => `<th>${c.label}</th>`).join('');
  const rows = workflow.phases
    .map((phase, index) => {
      const cells = GRID_COLUMNS.map(({ field }) => {
        const message = errorFor(fieldErrors, phase.name, field);
        const disabled =
          field === 'effort_rate_loc_per_hr' && phase.automated ? ' disabled' : '';
        const invalid = message ? ' aria-invalid="true"' : '';
        const note = message
          ? `<span class="field-error" role="alert">${escapeHtml(message)}</span>`
          : '';
        return (
          `<td><input data-phase-index="${index}" data-field="${field}" ` +
          `value="${cellValue(phase[field])}"${disabled}${invalid}>${note}</td>`
        );
      }).join('');
      const checked = phase.sa_attributed ? ' checked' : '';
      const auto = phase.automated ? ' <em>(automated)</em>' : '';
      return (
        `<tr data-phase="${escapeHtml(phase.name)}">` +
        `<td class="phase-name">${escapeHtml(phase.name)}${auto}</td>` +
        `<td class="phase-kind">${phase.kind}</td>` +
        cells +
        `<td><input type="checkbox" data-phase-index="${index}" data-field="sa_attributed"${checked}></td>` +
        `</tr>`
      );
    })
    .join('\n');
  return (
    `<table class="phase-grid"><thead><tr><th>Phase</th><th>Kind</th>${header}` +
    `<th>Tool-attributed</th></tr></thead>\n<tbody>\n${rows}\n</tbody></table>`
  );
}

export function gridRowCount(html: string): number {
  return (html.match(/<tr data-phase=/g) ?? []).length;
}
