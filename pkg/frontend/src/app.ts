/**
 * Browser shell: wires the grid, summary, charts, and sweep panel together.
 * All state transitions and rendering live in the pure modules; this file
 * only moves strings into the DOM and events out of it.
 */

import { ApiClient } from './api.js';
import { effortBars, pairedBarChart, removalBars, sweepLine } from './charts.js';
import { getBaseUrl, setBaseUrl } from './config.js';
import { CompareController } from './controller.js';
import { renderGrid } from './grid.js';
import {
  applyEdit,
  compareFailed,
  compareSucceeded,
  initialState,
  loadWorkflow,
  setSize,
  toggleSaAttribution,
  type AppState,
} from './state.js';
import { renderSummary } from './summary.js';
import type { EditableField } from './types.js';

let state: AppState = initialState();
let api = new ApiClient(getBaseUrl());
let controller: CompareController;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function renderAll(): void {
  el('banner').textContent = state.banner ?? '';
  el('banner').style.display = state.banner ? 'block' : 'none';
  if (state.workflow) {
    el('grid').innerHTML = renderGrid(state.workflow, state.fieldErrors);
  }
  if (state.delta) {
    el('summary').innerHTML = renderSummary(state.delta);
    el('chart-removals').innerHTML = pairedBarChart(removalBars(state.delta), {
      title: 'Defects removed by phase (without vs with tool)',
    });
    el('chart-effort').innerHTML = pairedBarChart(effortBars(state.delta), {
      title: 'Effort by phase (without vs with tool)',
    });
  }
}

function scheduleCompare(): void {
  if (state.workflow) controller.request(state.workflow, state.size);
}

function onGridInput(event: Event): void {
  const target = event.target as HTMLInputElement;
  const indexRaw = target.dataset['phaseIndex'];
  const field = target.dataset['field'];
  if (indexRaw === undefined || !field) return;
  const index = Number(indexRaw);
  const result =
    field === 'sa_attributed'
      ? toggleSaAttribution(state, index)
      : applyEdit(state, index, field as EditableField, target.value);
  state = result.state;
  renderAll();
  if (result.submit) scheduleCompare();
}

async function selectWorkflow(name: string): Promise<void> {
  try {
    const workflow = await api.getWorkflow(name);
    state = loadWorkflow(state, workflow);
    renderAll();
    if (state.workflow) await controller.fire(state.workflow, state.size);
  } catch (error) {
    state = compareFailed(state, error instanceof Error ? error.message : String(error));
    renderAll();
  }
}

async function runSweep(): Promise<void> {
  if (!state.workflow) return;
  const phase = (el('sweep-phase') as HTMLInputElement).value;
  const parameter = (el('sweep-param') as HTMLSelectElement).value;
  const values = (el('sweep-values') as HTMLInputElement).value
    .split(',')
    .map((v) => Number(v.trim()))
    .filter((v) => !Number.isNaN(v));
  try {
    const series = await api.sweep(state.workflow, state.size, { phase, parameter }, values);
    el('chart-sweep').innerHTML = sweepLine(series, {
      title: `effort delta vs ${phase}.${parameter}`,
    });
  } catch (error) {
    state = compareFailed(state, error instanceof Error ? error.message : String(error));
    renderAll();
  }
}

async function boot(): Promise<void> {
  controller = new CompareController(
    api,
    (delta) => {
      state = compareSucceeded(state, delta);
      renderAll();
    },
    (message) => {
      state = compareFailed(state, message);
      renderAll();
    },
  );

  const baseInput = el('base-url') as HTMLInputElement;
  baseInput.value = getBaseUrl();
  baseInput.addEventListener('change', () => {
    setBaseUrl(baseInput.value);
    api = new ApiClient(getBaseUrl());
    void boot();
  });

  const sizeInput = el('size') as HTMLInputElement;
  sizeInput.value = String(state.size);
  sizeInput.addEventListener('change', () => {
    const result = setSize(state, sizeInput.value);
    state = result.state;
    renderAll();
    if (result.submit) scheduleCompare();
  });

  el('grid').addEventListener('input', onGridInput);
  el('sweep-run').addEventListener('click', () => void runSweep());

  try {
    const names = await api.listWorkflows();
    const select = el('workflow-select') as HTMLSelectElement;
    select.innerHTML = names.map((n) => `<option value="${n}">${n}</option>`).join('');
    select.addEventListener('change', () => void selectWorkflow(select.value));
    const first = names.includes('org_c') ? 'org_c' : names[0];
    if (first) {
      select.value = first;
      await selectWorkflow(first);
    }
  } catch (error) {
    state = compareFailed(
      state,
      `cannot reach the service at ${getBaseUrl()}: ` +
        (error instanceof Error ? error.message : String(error)),
    );
    renderAll();
  }
}

document.addEventListener('DOMContentLoaded', () => void boot());
