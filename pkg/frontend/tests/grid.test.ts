import { describe, expect, it } from 'vitest';

import { GRID_COLUMNS, gridRowCount, renderGrid } from '../src/grid.js';
import { applyEdit, initialState, loadWorkflow } from '../src/state.js';
import { orgCWorkflow } from './helpers.js';

describe('renderGrid', () => {
  it('shows one row per phase: org_c has twenty', () => {
    const html = renderGrid(orgCWorkflow());
    expect(gridRowCount(html)).toBe(20);
  });

  it('renders the parameter columns as inputs', () => {
    const html = renderGrid(orgCWorkflow());
    for (const { field } of GRID_COLUMNS) {
      expect(html).toContain(`data-field="${field}"`);
    }
    expect(html).toContain('Yield without');
    expect(html).toContain('Yield with');
    expect(html).toContain('Fix cost (h/Def)');
  });

  it('automated phases get a disabled effort-rate cell and empty value', () => {
    const html = renderGrid(orgCWorkflow());
    const row = html.split('\n').find((line) => line.includes('data-phase="StaticAnalysis"'))!;
    expect(row).toContain('disabled');
    expect(row).toContain('(automated)');
    expect(row).toContain('data-field="effort_rate_loc_per_hr" value=""');
  });

  it('marks the tool-attributed checkbox from the document', () => {
    const html = renderGrid(orgCWorkflow());
    const row = html.split('\n').find((line) => line.includes('data-phase="StaticAnalysis"'))!;
    expect(row).toContain('data-field="sa_attributed" checked');
  });

  it('a blocked edit renders an inline error on the offending cell', () => {
    const state = loadWorkflow(initialState(), orgCWorkflow());
    const index = state.workflow!.phases.findIndex((p) => p.name === 'Utest');
    const result = applyEdit(state, index, 'yield_with_sa', '1.5');
    const html = renderGrid(result.state.workflow!, result.state.fieldErrors);
    const row = html.split('\n').find((line) => line.includes('data-phase="Utest"'))!;
    expect(row).toContain('aria-invalid="true"');
    expect(row).toContain('field-error');
    expect(row).toContain('between 0 and 1');
  });
});
