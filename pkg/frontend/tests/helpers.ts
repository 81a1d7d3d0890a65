import { readFileSync } from 'node:fs';

import type { DeltaDoc, SweepEntryDoc, WorkflowDoc } from '../src/types.js';

function load<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as T;
}

/** Payloads captured from the real service over the shipped org_c fixture. */
export const orgCWorkflow = () => load<WorkflowDoc>('org_c.workflow.json');
export const orgCCompare = () => load<DeltaDoc>('org_c_compare.json');
export const orgCCompareZeroTool = () => load<DeltaDoc>('org_c_compare_sa0.json');
export const orgCSweepSTest = () => load<SweepEntryDoc[]>('org_c_sweep_stest.json');

interface FetchCall {
  url: string;
  init?: RequestInit;
  respond(body: unknown, status?: number): void;
  fail(error: Error): void;
  aborted(): boolean;
}

/** Manually-resolved fetch double that honors AbortSignal. */
export function fakeFetch() {
  const calls: FetchCall[] = [];
  const impl = (url: string, init?: RequestInit): Promise<Response> => {
    let resolveFn!: (r: Response) => void;
    let rejectFn!: (e: Error) => void;
    const promise = new Promise<Response>((resolve, reject) => {
      resolveFn = resolve;
      rejectFn = reject;
    });
    const signal = init?.signal ?? null;
    if (signal) {
      if (signal.aborted) rejectFn(new DOMException('aborted', 'AbortError'));
      signal.addEventListener('abort', () =>
        rejectFn(new DOMException('aborted', 'AbortError')),
      );
    }
    calls.push({
      url,
      init,
      respond(body: unknown, status = 200) {
        resolveFn(
          new Response(JSON.stringify(body), {
            status,
            headers: { 'content-type': 'application/json' },
          }),
        );
      },
      fail(error: Error) {
        rejectFn(error);
      },
      aborted: () => Boolean(signal?.aborted),
    });
    return promise;
  };
  return { impl, calls };
}

/** data-field -> rendered text, pulled from a summary HTML string. */
export function displayedValues(html: string): Map<string, string> {
  const out = new Map<string, string>();
  for (const match of html.matchAll(/data-field="([^"]+)">([^<]*)</g)) {
    out.set(match[1]!, match[2]!);
  }
  return out;
}
