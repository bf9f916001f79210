import { describe, expect, it } from "vitest";

import {
  advance,
  afterDecision,
  buildQueue,
  currentCluster,
  keyToAction,
  onConflict,
  retreat,
  suggestedCanonical,
} from "../src/review.js";
import type { Cluster } from "../src/types.js";

function cluster(id: number, size: number, status = "pending"): Cluster {
  return {
    cluster_id: id,
    rpy: 1997,
    size,
    suggested_canonical: 0,
    status,
    members: [
      { raw: `VARIANT A${id}`, count: size - 1 },
      { raw: `VARIANT B${id}`, count: 1 },
    ],
  };
}

describe("queue building", () => {
  it("orders by spectrum impact: total occurrences descending", () => {
    const state = buildQueue([cluster(1, 3), cluster(2, 13), cluster(3, 5)], 7);
    expect(state.queue.map((c) => c.cluster_id)).toEqual([2, 3, 1]);
    expect(state.cursor).toBe(0);
    expect(state.version).toBe(7);
  });

  it("breaks size ties by cluster id", () => {
    const state = buildQueue([cluster(9, 4), cluster(2, 4), cluster(5, 4)], 1);
    expect(state.queue.map((c) => c.cluster_id)).toEqual([2, 5, 9]);
  });

  it("keeps only pending clusters", () => {
    const state = buildQueue(
      [cluster(1, 5, "accepted"), cluster(2, 4), cluster(3, 9, "rejected")],
      1,
    );
    expect(state.queue.map((c) => c.cluster_id)).toEqual([2]);
  });
});

describe("cursor movement", () => {
  const state = buildQueue([cluster(1, 9), cluster(2, 8), cluster(3, 7)], 1);

  it("advances and clamps at the end", () => {
    let s = advance(state);
    expect(currentCluster(s)!.cluster_id).toBe(2);
    s = advance(advance(advance(s)));
    expect(s.cursor).toBe(2);
  });

  it("retreats and clamps at the start", () => {
    const s = retreat(retreat(advance(state)));
    expect(s.cursor).toBe(0);
  });

  it("handles an empty queue", () => {
    const empty = buildQueue([], 1);
    expect(currentCluster(empty)).toBeNull();
    expect(advance(empty).cursor).toBe(0);
    expect(retreat(empty).cursor).toBe(0);
  });
});

describe("decisions", () => {
  it("drops the decided cluster and adopts the new version", () => {
    const state = buildQueue([cluster(1, 9), cluster(2, 8), cluster(3, 7)], 4);
    const next = afterDecision(state, 1, 5);
    expect(next.queue.map((c) => c.cluster_id)).toEqual([2, 3]);
    expect(next.cursor).toBe(0);
    expect(next.version).toBe(5);
    expect(next.needsRefresh).toBe(false);
  });

  it("clamps the cursor when the tail cluster is decided", () => {
    let state = buildQueue([cluster(1, 9), cluster(2, 8)], 1);
    state = advance(state);
    const next = afterDecision(state, 2, 2);
    expect(next.cursor).toBe(0);
    expect(currentCluster(next)!.cluster_id).toBe(1);
  });

  it("flags the queue for refresh on a version conflict", () => {
    const state = buildQueue([cluster(1, 9)], 1);
    const conflicted = onConflict(state);
    expect(conflicted.needsRefresh).toBe(true);
    expect(conflicted.queue).toEqual(state.queue);
  });
});

describe("keyboard protocol", () => {
  it("maps the decision keys", () => {
    expect(keyToAction("a")).toEqual({ kind: "decide", decision: "accept" });
    expect(keyToAction("r")).toEqual({ kind: "decide", decision: "reject" });
    expect(keyToAction("e")).toEqual({ kind: "decide", decision: "edit" });
  });

  it("maps movement keys and arrows", () => {
    expect(keyToAction("j")).toEqual({ kind: "next" });
    expect(keyToAction("ArrowDown")).toEqual({ kind: "next" });
    expect(keyToAction("k")).toEqual({ kind: "prev" });
    expect(keyToAction("ArrowUp")).toEqual({ kind: "prev" });
  });

  it("ignores everything else", () => {
    expect(keyToAction("x")).toBeNull();
    expect(keyToAction("Enter")).toBeNull();
    expect(keyToAction("A")).toBeNull();
  });
});

describe("canonical suggestion", () => {
  it("reads the member the server pointed at", () => {
    const c = cluster(1, 9);
    expect(suggestedCanonical(c)).toBe("VARIANT A1");
    expect(suggestedCanonical({ ...c, suggested_canonical: 1 })).toBe("VARIANT B1");
  });

  it("degrades to an empty string when the index is out of range", () => {
    expect(suggestedCanonical({ ...cluster(1, 9), suggested_canonical: 99 })).toBe("");
  });
});
