// Offline spectrum recomputation used only by the end-to-end test as an
// oracle. The shipped UI never does this math; the test does, so it can
// predict what the server must serve after a merge and compare exactly.

import type { SpectrumPoint } from "../src/types.js";

export function totalsFromPoints(points: SpectrumPoint[]): Map<number, number> {
  const totals = new Map<number, number>();
  for (const p of points) totals.set(p.rpy, p.n_cr_total);
  return totals;
}

/**
 * Merging two same-year variants collapses their shared citing papers:
 * the year's distinct-paper total drops by exactly the overlap.
 */
export function applyMergeToTotals(
  totals: Map<number, number>,
  rpy: number,
  overlap: number,
): Map<number, number> {
  const next = new Map(totals);
  next.set(rpy, (next.get(rpy) ?? 0) - overlap);
  return next;
}

/**
 * Five-year moving median over the zero-filled year range, window
 * clamped at the ends; deviation is the year's total minus its median.
 * Totals are integers so every median is an integer or half-integer,
 * both exact in floating point, which lets the e2e test compare with
 * strict equality.
 */
export function fiveYearSpectrum(totals: Map<number, number>): SpectrumPoint[] {
  if (totals.size === 0) return [];
  const years = [...totals.keys()];
  const lo = Math.min(...years);
  const hi = Math.max(...years);
  const filled: number[] = [];
  for (let y = lo; y <= hi; y++) filled.push(totals.get(y) ?? 0);

  const points: SpectrumPoint[] = [];
  for (let y = lo; y <= hi; y++) {
    const from = Math.max(lo, y - 2);
    const to = Math.min(hi, y + 2);
    const window: number[] = [];
    for (let w = from; w <= to; w++) window.push(filled[w - lo]!);
    window.sort((a, b) => a - b);
    const mid = window.length >> 1;
    const median =
      window.length % 2 === 1 ? window[mid]! : (window[mid - 1]! + window[mid]!) / 2;
    const count = filled[y - lo]!;
    points.push({ rpy: y, n_cr_total: count, median5: median, deviation: count - median });
  }
  return points;
}
