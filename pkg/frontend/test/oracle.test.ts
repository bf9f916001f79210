// The e2e oracle has to be right before it can judge the server, so its
// median behaviour is pinned here against hand-computed series.

import { describe, expect, it } from "vitest";

import { applyMergeToTotals, fiveYearSpectrum, totalsFromPoints } from "./oracle.js";

function totals(entries: Array<[number, number]>): Map<number, number> {
  return new Map(entries);
}

describe("five-year spectrum oracle", () => {
  it("flattens an arithmetic progression to zero deviation in the interior", () => {
    const points = fiveYearSpectrum(
      totals([
        [2000, 10],
        [2001, 12],
        [2002, 14],
        [2003, 16],
        [2004, 18],
      ]),
    );
    expect(points[2]).toEqual({ rpy: 2002, n_cr_total: 14, median5: 14, deviation: 0 });
  });

  it("scores a lone spike by its full excess over the window median", () => {
    const points = fiveYearSpectrum(
      totals([
        [2000, 10],
        [2001, 12],
        [2002, 368],
        [2003, 40],
        [2004, 20],
      ]),
    );
    expect(points[2]!.median5).toBe(20);
    expect(points[2]!.deviation).toBe(348);
  });

  it("zero-fills gaps inside the year range", () => {
    const points = fiveYearSpectrum(
      totals([
        [2000, 6],
        [2004, 6],
      ]),
    );
    expect(points.map((p) => p.rpy)).toEqual([2000, 2001, 2002, 2003, 2004]);
    expect(points.map((p) => p.deviation)).toEqual([6, 0, 0, 0, 6]);
  });

  it("clamps the window at the ends and takes half-integer medians exactly", () => {
    const points = fiveYearSpectrum(
      totals([
        [2000, 1],
        [2001, 2],
        [2002, 5],
        [2003, 8],
      ]),
    );
    expect(points.map((p) => p.median5)).toEqual([2, 3.5, 3.5, 5]);
    expect(points.map((p) => p.deviation)).toEqual([-1, -1.5, 1.5, 3]);
  });

  it("returns nothing for an empty map", () => {
    expect(fiveYearSpectrum(new Map())).toEqual([]);
  });
});

describe("merge prediction helpers", () => {
  it("subtracts the overlap at the merge year only", () => {
    const before = totals([
      [1996, 4],
      [1997, 13],
      [1998, 9],
    ]);
    const after = applyMergeToTotals(before, 1997, 2);
    expect(after.get(1996)).toBe(4);
    expect(after.get(1997)).toBe(11);
    expect(after.get(1998)).toBe(9);
    expect(before.get(1997)).toBe(13);
  });

  it("round trips served points into totals", () => {
    const m = totalsFromPoints([
      { rpy: 1990, n_cr_total: 3, median5: 0, deviation: 3 },
      { rpy: 1991, n_cr_total: 7, median5: 3, deviation: 4 },
    ]);
    expect(m.get(1990)).toBe(3);
    expect(m.get(1991)).toBe(7);
  });
});
