// Spectrogram view logic. Pure geometry over server payloads: the counts,
// medians and deviations all arrive computed, and this module only decides
// where to draw them. Nothing here aggregates or re-derives a statistic.

import type { CRRow, SpectrumPoint } from "./types.js";

export function isEmptySeries(points: SpectrumPoint[]): boolean {
  return points.length === 0;
}

/** Year whose served deviation is maximal; earliest wins a tie. */
export function peakYear(points: SpectrumPoint[]): number | null {
  let best: SpectrumPoint | null = null;
  for (const p of points) {
    if (best === null || p.deviation > best.deviation) best = p;
  }
  return best === null ? null : best.rpy;
}

/** Restrict served points to an inclusive [lo, hi] year selection. */
export function selectRange(
  points: SpectrumPoint[],
  range: [number, number] | null,
): SpectrumPoint[] {
  if (range === null) return points;
  const [lo, hi] = range;
  return points.filter((p) => p.rpy >= lo && p.rpy <= hi);
}

/** Rows of the served table for one year, heaviest first, for hover lists. */
export function topReferencesForYear(rows: CRRow[], rpy: number, limit: number): CRRow[] {
  return rows
    .filter((r) => r.rpy === rpy)
    .sort((a, b) => b.n_cr - a.n_cr || (a.cr < b.cr ? -1 : a.cr > b.cr ? 1 : 0))
    .slice(0, limit);
}

/** Full table slice for a clicked year, served order preserved. */
export function tableSlice(rows: CRRow[], rpy: number): CRRow[] {
  return rows.filter((r) => r.rpy === rpy);
}

export interface Bar {
  rpy: number;
  x: number;
  width: number;
  /** Pixel height for the served n_cr_total. */
  height: number;
}

export interface LinePoint {
  rpy: number;
  x: number;
  y: number;
}

export interface ChartGeometry {
  bars: Bar[];
  /** Deviation polyline, zero axis at `zeroY`. */
  line: LinePoint[];
  zeroY: number;
  maxCount: number;
  minDeviation: number;
  maxDeviation: number;
}

/**
 * Lay the dual series out in a width x height box: count bars fill from
 * the bottom, the deviation line gets the same x positions with its own
 * vertical scale around a shared zero line.
 */
export function chartGeometry(points: SpectrumPoint[], width: number, height: number): ChartGeometry {
  if (points.length === 0) {
    return { bars: [], line: [], zeroY: height / 2, maxCount: 0, minDeviation: 0, maxDeviation: 0 };
  }
  const maxCount = Math.max(...points.map((p) => p.n_cr_total), 1);
  const maxDeviation = Math.max(...points.map((p) => p.deviation), 0);
  const minDeviation = Math.min(...points.map((p) => p.deviation), 0);
  const devSpan = maxDeviation - minDeviation || 1;
  const slot = width / points.length;
  const barWidth = Math.max(1, slot * 0.8);
  const zeroY = (maxDeviation / devSpan) * height;

  const bars: Bar[] = points.map((p, i) => ({
    rpy: p.rpy,
    x: i * slot + (slot - barWidth) / 2,
    width: barWidth,
    height: (p.n_cr_total / maxCount) * height,
  }));
  const line: LinePoint[] = points.map((p, i) => ({
    rpy: p.rpy,
    x: i * slot + slot / 2,
    y: ((maxDeviation - p.deviation) / devSpan) * height,
  }));
  return { bars, line, zeroY, maxCount, minDeviation, maxDeviation };
}
