/**
 * SVG chart generation as pure string functions. Geometry (pixel scaling)
 * is the only computation applied to the payload's numbers.
 */

import { escapeHtml } from './grid.js';
import type { DeltaDoc, SweepEntryDoc } from './types.js';

export interface PairedBar {
  label: string;
  without: number;
  with: number;
}

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
}

const MARGIN = { top: 24, right: 8, bottom: 48, left: 8 };

/**
 * Side-by-side bars per phase: one for the without-tool run, one for the
 * with-tool run. Bar heights are proportional to the values.
 */
export function pairedBarChart(bars: PairedBar[], options: ChartOptions = {}): string {
  const width = options.width ?? 720;
  const height = options.height ?? 240;
  const plotWidth = width - MARGIN.left - MARGIN.right;
  const plotHeight = height - MARGIN.top - MARGIN.bottom;
  const max = Math.max(1e-12, ...bars.map((b) => Math.max(b.without, b.with)));
  const group = plotWidth / Math.max(1, bars.length);
  const barWidth = Math.min(22, group * 0.35);

  const parts: string[] = [];
  if (options.title) {
    parts.push(`<text x="${MARGIN.left}" y="14" class="chart-title">${escapeHtml(options.title)}</text>`);
  }
  bars.forEach((bar, i) => {
    const cx = MARGIN.left + group * (i + 0.5);
    const hWithout = (bar.without / max) * plotHeight;
    const hWith = (bar.with / max) * plotHeight;
    const baseline = MARGIN.top + plotHeight;
    parts.push(
      `<rect class="bar-without" data-phase="${escapeHtml(bar.label)}" data-value="${bar.without}" ` +
        `x="${(cx - barWidth - 1).toFixed(1)}" y="${(baseline - hWithout).toFixed(1)}" ` +
        `width="${barWidth.toFixed(1)}" height="${hWithout.toFixed(1)}"/>`,
      `<rect class="bar-with" data-phase="${escapeHtml(bar.label)}" data-value="${bar.with}" ` +
        `x="${(cx + 1).toFixed(1)}" y="${(baseline - hWith).toFixed(1)}" ` +
        `width="${barWidth.toFixed(1)}" height="${hWith.toFixed(1)}"/>`,
      `<text class="bar-label" x="${cx.toFixed(1)}" y="${height - 32}" ` +
        `transform="rotate(45 ${cx.toFixed(1)} ${height - 32})">${escapeHtml(bar.label)}</text>`,
    );
  });
  return `<svg viewBox="0 0 ${width} ${height}" role="img">${parts.join('')}</svg>`;
}

export function removalBars(delta: DeltaDoc): PairedBar[] {
  return delta.per_phase_removal_delta.map((d) => ({
    label: d.phase,
    without: d.without,
    with: d.with,
  }));
}

export function effortBars(delta: DeltaDoc): PairedBar[] {
  return delta.per_phase_effort_delta.map((d) => ({
    label: d.phase,
    without: d.without,
    with: d.with,
  }));
}

/** Effort-delta line over swept parameter values. */
export function sweepLine(series: SweepEntryDoc[], options: ChartOptions = {}): string {
  const width = options.width ?? 360;
  const height = options.height ?? 200;
  const plotWidth = width - 60;
  const plotHeight = height - 40;
  if (series.length === 0) return `<svg viewBox="0 0 ${width} ${height}" role="img"></svg>`;

  const xs = series.map((e) => e.value);
  const ys = series.map((e) => e.delta.effort_delta);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(0, ...ys);
  const yMax = Math.max(1e-12, ...ys);
  const sx = (x: number) =>
    40 + (xMax === xMin ? plotWidth / 2 : ((x - xMin) / (xMax - xMin)) * plotWidth);
  const sy = (y: number) => 10 + (1 - (y - yMin) / (yMax - yMin)) * plotHeight;

  const points = series
    .map((e) => `${sx(e.value).toFixed(1)},${sy(e.delta.effort_delta).toFixed(1)}`)
    .join(' ');
  const markers = series
    .map(
      (e) =>
        `<circle data-value="${e.value}" data-effort-delta="${e.delta.effort_delta}" ` +
        `cx="${sx(e.value).toFixed(1)}" cy="${sy(e.delta.effort_delta).toFixed(1)}" r="3"/>`,
    )
    .join('');
  const title = options.title
    ? `<text x="8" y="14" class="chart-title">${escapeHtml(options.title)}</text>`
    : '';
  return (
    `<svg viewBox="0 0 ${width} ${height}" role="img">${title}` +
    `<polyline fill="none" class="sweep-line" points="${points}"/>${markers}</svg>`
  );
}
