/**
 * One in-flight comparison per session: edits debounce, and a newer request
 * aborts the one still running so stale responses never land.
 */

import type { ApiClient } from './api.js';
import { COMPARE_DEBOUNCE_MS, debounce, type Debounced } from './debounce.js';
import type { DeltaDoc, WorkflowDoc } from './types.js';

export class CompareController {
  private readonly api: ApiClient;
  private readonly onResult: (delta: DeltaDoc) => void;
  private readonly onError: (message: string) => void;
  private readonly scheduled: Debounced<[WorkflowDoc, number]>;
  private inFlight: AbortController | null = null;

  constructor(
    api: ApiClient,
    onResult: (delta: DeltaDoc) => void,
    onError: (message: string) => void,
    delayMs: number = COMPARE_DEBOUNCE_MS,
  ) {
    this.api = api;
    this.onResult = onResult;
    this.onError = onError;
    this.scheduled = debounce((workflow, size) => void this.fire(workflow, size), delayMs);
  }

  /** Debounced entry point for grid edits. */
  request(workflow: WorkflowDoc, size: number): void {
    this.scheduled(workflow, size);
  }

  /** Immediate comparison (initial load, explicit run button). */
  async fire(workflow: WorkflowDoc, size: number): Promise<void> {
    this.scheduled.cancel();
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    try {
      const delta = await this.api.compare(workflow, size, controller.signal);
      if (!controller.signal.aborted) this.onResult(delta);
    } catch (error) {
      if (controller.signal.aborted) return; // superseded, not a failure
      this.onError(error instanceof Error ? error.message : String(error));
    } finally {
      if (this.inFlight === controller) this.inFlight = null;
    }
  }

  cancel(): void {
    this.scheduled.cancel();
    this.inFlight?.abort();
    this.inFlight = null;
  }
}
