import { describe, expect, it } from 'vitest';

import {
  applyEdit,
  compareFailed,
  compareSucceeded,
  errorFor,
  initialState,
  loadWorkflow,
  parseCell,
  setSize,
  toggleSaAttribution,
} from '../src/state.js';
import { orgCCompare, orgCWorkflow } from './helpers.js';

function loaded() {
  return loadWorkflow(initialState(), orgCWorkflow());
}

describe('parseCell', () => {
  it('maps empty to null and junk to undefined', () => {
    expect(parseCell('')).toBeNull();
    expect(parseCell('  ')).toBeNull();
    expect(parseCell('0.38')).toBe(0.38);
    expect(parseCell('abc')).toBeUndefined();
  });
});

describe('applyEdit', () => {
  it('an out-of-range yield blocks submission with an inline error', () => {
    const state = loaded();
    const index = state.workflow!.phases.findIndex((p) => p.name === 'Utest');
    const result = applyEdit(state, index, 'yield_with_sa', '1.5');
    expect(result.submit).toBe(false);
    expect(errorFor(result.state.fieldErrors, 'Utest', 'yield_with_sa')).toMatch(
      /between 0 and 1/,
    );
    // the stored workflow keeps the previous value
    expect(result.state.workflow!.phases[index]!.yield_with_sa).toBe(0.69);
  });

  it('setting the tool yield to zero submits the edited document', () => {
    const state = loaded();
    const index = state.workflow!.phases.findIndex((p) => p.name === 'StaticAnalysis');
    const result = applyEdit(state, index, 'yield_with_sa', '0');
    expect(result.submit).toBe(true);
    expect(result.state.workflow!.phases[index]!.yield_with_sa).toBe(0);
    // what gets POSTed is exactly this document
    expect(result.state.workflow!.phases[index]!.yield_without_sa).toBe(0);
  });

  it('a valid edit clears the previous error on that cell', () => {
    const state = loaded();
    const index = state.workflow!.phases.findIndex((p) => p.name === 'STest');
    const bad = applyEdit(state, index, 'fix_cost_hr_per_def', '-1');
    expect(bad.submit).toBe(false);
    const good = applyEdit(bad.state, index, 'fix_cost_hr_per_def', '0.44');
    expect(good.submit).toBe(true);
    expect(errorFor(good.state.fieldErrors, 'STest', 'fix_cost_hr_per_def')).toBeNull();
  });

  it('yield edits on non-attributed phases demand a toggle first', () => {
    const state = loaded();
    const index = state.workflow!.phases.findIndex((p) => p.name === 'STest');
    const result = applyEdit(state, index, 'yield_with_sa', '0.5');
    expect(result.submit).toBe(false);
    expect(errorFor(result.state.fieldErrors, 'STest', 'yield_with_sa')).toMatch(
      /tool-attributed/,
    );
    const toggled = toggleSaAttribution(result.state, index);
    expect(toggled.submit).toBe(true);
  });
});

describe('size and results', () => {
  it('rejects non-integer sizes', () => {
    const state = loaded();
    expect(setSize(state, '-3').submit).toBe(false);
    expect(setSize(state, '12.5').submit).toBe(false);
    const ok = setSize(state, '178505');
    expect(ok.submit).toBe(true);
    expect(ok.state.size).toBe(178505);
  });

  it('failure keeps previous results and raises the banner', () => {
    let state = loaded();
    state = compareSucceeded(state, orgCCompare());
    const failed = compareFailed(state, 'service unreachable');
    expect(failed.banner).toBe('service unreachable');
    expect(failed.delta).toBe(state.delta); // previous results retained
    const recovered = compareSucceeded(failed, orgCCompare());
    expect(recovered.banner).toBeNull();
  });
});
