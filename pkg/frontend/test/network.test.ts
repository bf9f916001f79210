import { describe, expect, it } from "vitest";

import {
  clusterColor,
  layoutGraph,
  MAX_RENDER_NODES,
  mulberry32,
  nodeColor,
  radiusFor,
  scoreColor,
  scorePosition,
  tooLarge,
} from "../src/network.js";
import type { GraphItem, GraphPayload } from "../src/types.js";

function item(id: number, weight: number, cluster: number | null = null, score: number | null = null): GraphItem {
  return { id, label: `node ${id}`, weight, score, cluster };
}

function payload(items: GraphItem[], links: Array<[number, number, number]> = []): GraphPayload {
  return {
    version: 1,
    kind: "keyword",
    params: {},
    items,
    links: links.map(([source_id, target_id, strength]) => ({ source_id, target_id, strength })),
  };
}

// two tight cliques joined by nothing, preclustered by the server
function twoCliques(): GraphPayload {
  const items = [
    item(1, 5, 1),
    item(2, 5, 1),
    item(3, 5, 1),
    item(4, 3, 2),
    item(5, 3, 2),
    item(6, 3, 2),
  ];
  const links: Array<[number, number, number]> = [
    [1, 2, 2],
    [1, 3, 2],
    [2, 3, 2],
    [4, 5, 1],
    [4, 6, 1],
    [5, 6, 1],
  ];
  return payload(items, links);
}

describe("determinism", () => {
  it("produces an identical stream for the same seed", () => {
    const a = mulberry32(99);
    const b = mulberry32(99);
    for (let i = 0; i < 50; i++) expect(a()).toBe(b());
  });

  it("lays out the same payload identically across runs", () => {
    const first = layoutGraph(twoCliques(), { seed: 7 });
    const second = layoutGraph(twoCliques(), { seed: 7 });
    expect(JSON.stringify(second)).toBe(JSON.stringify(first));
  });

  it("moves nodes when the seed changes", () => {
    const first = layoutGraph(twoCliques(), { seed: 7 });
    const second = layoutGraph(twoCliques(), { seed: 8 });
    const same = first.nodes.every((n, i) => n.x === second.nodes[i]!.x && n.y === second.nodes[i]!.y);
    expect(same).toBe(false);
  });
});

describe("layout output", () => {
  it("renders exactly one circle per served item", () => {
    const graph = twoCliques();
    const layout = layoutGraph(graph, { seed: 1 });
    expect(layout.nodes).toHaveLength(graph.items.length);
    expect(layout.nodes.map((n) => n.id)).toEqual(graph.items.map((it) => it.id));
  });

  it("handles the empty graph", () => {
    expect(layoutGraph(payload([]), {})).toEqual({ nodes: [], edges: [] });
  });

  it("stays inside the viewport", () => {
    const layout = layoutGraph(twoCliques(), { width: 400, height: 300, seed: 3 });
    for (const n of layout.nodes) {
      expect(n.x).toBeGreaterThanOrEqual(10);
      expect(n.x).toBeLessThanOrEqual(390);
      expect(n.y).toBeGreaterThanOrEqual(10);
      expect(n.y).toBeLessThanOrEqual(290);
    }
  });

  it("maps link endpoints to node indices and drops unknown ids", () => {
    const graph = payload([item(1, 2), item(2, 2)], [[1, 2, 1], [1, 9, 1], [2, 2, 1]]);
    const layout = layoutGraph(graph, { seed: 1 });
    expect(layout.edges).toHaveLength(1);
    expect(layout.edges[0]!.from).toBe(0);
    expect(layout.edges[0]!.to).toBe(1);
  });

  it("pulls linked nodes closer than the unlinked pair", () => {
    // a-b linked, c floating: after layout the linked pair should sit
    // closer together than either is to the stray node
    const graph = payload([item(1, 1), item(2, 1), item(3, 1)], [[1, 2, 3]]);
    const layout = layoutGraph(graph, { seed: 11, iterations: 200 });
    const [a, b, c] = layout.nodes;
    const d = (p: { x: number; y: number }, q: { x: number; y: number }) => Math.hypot(p.x - q.x, p.y - q.y);
    expect(d(a!, b!)).toBeLessThan(d(a!, c!));
    expect(d(a!, b!)).toBeLessThan(d(b!, c!));
  });
});

describe("node size", () => {
  it("grows monotonically with served weight", () => {
    expect(radiusFor(1, 100)).toBeLessThan(radiusFor(50, 100));
    expect(radiusFor(50, 100)).toBeLessThan(radiusFor(100, 100));
  });

  it("pins the extremes of the scale", () => {
    expect(radiusFor(100, 100, 4, 18)).toBe(18);
    expect(radiusFor(0, 100, 4, 18)).toBe(4);
    expect(radiusFor(5, 0)).toBe(4);
  });
});

describe("cluster coloring", () => {
  it("splits a two-clique payload into exactly two color groups", () => {
    const layout = layoutGraph(twoCliques(), { seed: 1, colorBy: "cluster" });
    const colors = new Set(layout.nodes.map((n) => n.color));
    expect(colors.size).toBe(2);
    expect(layout.nodes[0]!.color).toBe(layout.nodes[1]!.color);
    expect(layout.nodes[0]!.color).not.toBe(layout.nodes[3]!.color);
  });

  it("gives unclustered nodes the no-data color", () => {
    expect(clusterColor(null)).toBe(clusterColor(null));
    expect(clusterColor(1)).not.toBe(clusterColor(null));
    expect(clusterColor(1)).not.toBe(clusterColor(2));
  });
});

describe("overlay coloring", () => {
  it("orders ramp positions by mean year", () => {
    const scores = [1984.5, 1991, 2003.25, 2014];
    const positions = scores.map((s) => scorePosition(s, 1984.5, 2014));
    for (let i = 1; i < positions.length; i++) {
      expect(positions[i]!).toBeGreaterThan(positions[i - 1]!);
    }
    expect(positions[0]).toBe(0);
    expect(positions[positions.length - 1]).toBe(1);
  });

  it("collapses a degenerate range to the middle", () => {
    expect(scorePosition(2000, 2000, 2000)).toBe(0.5);
  });

  it("cools old years and warms new ones monotonically", () => {
    const hueOf = (c: string) => Number(/hsl\(([\d.]+)/.exec(c)![1]);
    const colors = [1980, 1990, 2000, 2010].map((y) => scoreColor(y, 1980, 2010));
    for (let i = 1; i < colors.length; i++) {
      expect(hueOf(colors[i]!)).toBeLessThan(hueOf(colors[i - 1]!));
    }
  });

  it("marks score-less nodes as no-data in overlay mode", () => {
    const withScore = nodeColor(item(1, 5, null, 1999), "score", 1990, 2010);
    const without = nodeColor(item(2, 5, null, null), "score", 1990, 2010);
    expect(withScore).toMatch(/^hsl/);
    expect(without).not.toMatch(/^hsl/);
  });
});

describe("render guard", () => {
  it("trips strictly above the limit", () => {
    const just = payload(Array.from({ length: MAX_RENDER_NODES }, (_, i) => item(i + 1, 1)));
    const over = payload(Array.from({ length: MAX_RENDER_NODES + 1 }, (_, i) => item(i + 1, 1)));
    expect(tooLarge(just)).toBe(false);
    expect(tooLarge(over)).toBe(true);
  });
});
