/** Display formatting. The only arithmetic the UI applies to model values. */

/** Two fixed decimals, the precision the parameter tables are quoted at. */
export function fmt2(value: number): string {
  return value.toFixed(2);
}

/** Fraction as a percentage with one decimal, e.g. 0.38 -> "38.0%". */
export function pct1(fraction: number | null): string {
  if (fraction === null) return 'n/a';
  return `${(fraction * 100).toFixed(1)}%`;
}

/** "1.13 -> 0.70 Def/KLOC" style density pair. */
export function densityPair(without: number, withSa: number): string {
  return `${fmt2(without)} → ${fmt2(withSa)} Def/KLOC`;
}

export function hours(value: number): string {
  return `${fmt2(value)} h`;
}
