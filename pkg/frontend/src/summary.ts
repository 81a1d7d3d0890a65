/**
 * Summary block under the charts. Every number is a formatted field of the
 * comparison payload; data-field attributes name the source field so the
 * mapping is checkable.
 */

import { densityPair, fmt2, hours, pct1 } from './format.js';
import type { DeltaDoc } from './types.js';

function line(label: string, field: string, value: string): string {
  return (
    `<div class="summary-line"><span class="label">${label}</span> ` +
    `<span class="value" data-field="${field}">${value}</span></div>`
  );
}

export function renderSummary(delta: DeltaDoc): string {
  const parts = [
    line('Total effort without tool', 'trace_without.total_effort', hours(delta.trace_without.total_effort)),
    line('Total effort with tool', 'trace_with.total_effort', hours(delta.trace_with.total_effort)),
    line('Effort delta (without − with)', 'effort_delta', hours(delta.effort_delta)),
    line('Escape reduction', 'escape_reduction_fraction', pct1(delta.escape_reduction_fraction)),
    line(
      'Defect density',
      'density_without,density_with',
      densityPair(delta.density_without, delta.density_with),
    ),
  ];
  const failures = delta.failure_removal_reduction
    .map(
      (f) =>
        `<span class="value" data-field="failure_removal_reduction.${f.phase}">` +
        `${f.phase} ${pct1(f.reduction_fraction)}</span>`,
    )
    .join(', ');
  parts.push(
    `<div class="summary-line"><span class="label">Failure-phase removal reduction</span> ${failures}</div>`,
  );
  return `<div class="summary">\n${parts.join('\n')}\n</div>`;
}

/** True when the payload reports no tool benefit at all. */
export function isZeroBenefit(delta: DeltaDoc): boolean {
  return (
    fmt2(delta.effort_delta) === '0.00' &&
    (delta.escape_reduction_fraction === null ||
      pct1(delta.escape_reduction_fraction) === '0.0%') &&
    fmt2(delta.density_without) === fmt2(delta.density_with)
  );
}
