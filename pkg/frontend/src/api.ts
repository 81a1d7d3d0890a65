/**
 * Typed client for the simulation service. One base-URL setting; every
 * request can carry an AbortSignal so superseded comparisons are dropped.
 */

import type { DeltaDoc, SweepEntryDoc, TraceDoc, WorkflowDoc } from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly violations: string[];

  constructor(status: number, violations: string[]) {
    super(violations.join('; ') || `request failed with status ${status}`);
    this.status = status;
    this.violations = violations;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let violations: string[] = [];
      try {
        const body = (await response.json()) as { violations?: string[] };
        violations = body.violations ?? [];
      } catch {
        // non-JSON error body; status alone will have to do
      }
      throw new ApiError(response.status, violations);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
      signal,
    });
  }

  listWorkflows(): Promise<string[]> {
    return this.request<string[]>('/workflows');
  }

  getWorkflow(name: string): Promise<WorkflowDoc> {
    return this.request<WorkflowDoc>(`/workflows/${encodeURIComponent(name)}`);
  }

  simulate(
    workflow: WorkflowDoc | string,
    size: number,
    scenario: 'with_sa' | 'without_sa',
    signal?: AbortSignal,
  ): Promise<TraceDoc> {
    return this.post<TraceDoc>('/simulate', { workflow, size, scenario }, signal);
  }

  compare(workflow: WorkflowDoc | string, size: number, signal?: AbortSignal): Promise<DeltaDoc> {
    return this.post<DeltaDoc>('/compare', { workflow, size }, signal);
  }

  sweep(
    workflow: WorkflowDoc | string,
    size: number,
    target: { phase: string; parameter: string },
    values: number[],
    signal?: AbortSignal,
  ): Promise<SweepEntryDoc[]> {
    return this.post<SweepEntryDoc[]>('/sweep', { workflow, size, target, values }, signal);
  }
}
