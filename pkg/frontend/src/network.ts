// Client-side force layout for the network view.
//
// The server ships nodes, links, weights, cluster ids and overlay scores;
// the client only decides where the circles go. The layout is seeded so a
// re-render of the same payload lands every node in the same place, and
// anything above MAX_RENDER_NODES is refused in favour of a prompt to
// tighten the threshold.

import type { GraphItem, GraphLink, GraphPayload } from "./types.js";

export const MAX_RENDER_NODES = 5000;

export function tooLarge(payload: GraphPayload): boolean {
  return payload.items.length > MAX_RENDER_NODES;
}

/** Deterministic 32-bit PRNG; same seed, same stream. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Radius grows with the square root of the served weight. */
export function radiusFor(weight: number, maxWeight: number, rMin = 4, rMax = 18): number {
  if (maxWeight <= 0) return rMin;
  const t = Math.sqrt(Math.max(weight, 0) / maxWeight);
  return rMin + t * (rMax - rMin);
}

const PALETTE = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
  "#9c6b4e",
  "#9498a0",
];

const NO_DATA = "#b0b0b0";

export function clusterColor(cluster: number | null): string {
  if (cluster === null || cluster < 1) return NO_DATA;
  return PALETTE[(cluster - 1) % PALETTE.length]!;
}

/** Position of a score on the overlay ramp, 0 = oldest, 1 = newest. */
export function scorePosition(score: number, lo: number, hi: number): number {
  if (hi <= lo) return 0.5;
  return (score - lo) / (hi - lo);
}

/** Cool-to-warm ramp; hue falls monotonically as the score rises. */
export function scoreColor(score: number, lo: number, hi: number): string {
  const t = Math.min(Math.max(scorePosition(score, lo, hi), 0), 1);
  const hue = 215 - t * (215 - 18);
  return `hsl(${hue.toFixed(1)}, 72%, 46%)`;
}

export type ColorMode = "cluster" | "score";

export function nodeColor(item: GraphItem, mode: ColorMode, lo: number, hi: number): string {
  if (mode === "cluster") return clusterColor(item.cluster);
  return item.score === null ? NO_DATA : scoreColor(item.score, lo, hi);
}

export interface LayoutNode {
  id: number;
  label: string;
  weight: number;
  x: number;
  y: number;
  r: number;
  color: string;
}

export interface LayoutEdge {
  /** Indices into the nodes array, not payload ids. */
  from: number;
  to: number;
  width: number;
}

export interface Layout {
  nodes: LayoutNode[];
  edges: LayoutEdge[];
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  seed?: number;
  iterations?: number;
  colorBy?: ColorMode;
}

interface Vec {
  x: number;
  y: number;
}

function scoreRange(items: GraphItem[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const it of items) {
    if (it.score === null) continue;
    if (it.score < lo) lo = it.score;
    if (it.score > hi) hi = it.score;
  }
  return lo === Infinity ? [0, 0] : [lo, hi];
}

/**
 * Fruchterman-Reingold with seeded initial positions and linear cooling.
 * Quadratic in node count, so the iteration count backs off for big
 * graphs; MAX_RENDER_NODES keeps the worst case bounded anyway.
 */
export function layoutGraph(payload: GraphPayload, opts: LayoutOptions = {}): Layout {
  const width = opts.width ?? 900;
  const height = opts.height ?? 600;
  const seed = opts.seed ?? 42;
  const mode = opts.colorBy ?? "cluster";
  const items = payload.items;
  const n = items.length;
  if (n === 0) return { nodes: [], edges: [] };

  const iterations = opts.iterations ?? Math.max(10, Math.min(120, Math.floor(40000 / n)));
  const rand = mulberry32(seed);
  const pos: Vec[] = [];
  for (let i = 0; i < n; i++) {
    pos.push({ x: rand() * width, y: rand() * height });
  }

  const indexOf = new Map<number, number>();
  items.forEach((it, i) => indexOf.set(it.id, i));
  const edges: Array<[number, number, number]> = [];
  for (const link of payload.links) {
    const a = indexOf.get(link.source_id);
    const b = indexOf.get(link.target_id);
    if (a === undefined || b === undefined || a === b) continue;
    edges.push([a, b, link.strength]);
  }

  const k = Math.sqrt((width * height) / n);
  const disp: Vec[] = items.map(() => ({ x: 0, y: 0 }));
  let temperature = width / 8;
  const cooling = temperature / (iterations + 1);

  for (let step = 0; step < iterations; step++) {
    for (let i = 0; i < n; i++) {
      disp[i]!.x = 0;
      disp[i]!.y = 0;
    }
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i]!.x - pos[j]!.x;
        let dy = pos[i]!.y - pos[j]!.y;
        let d = Math.hypot(dx, dy);
        if (d < 0.01) {
          // coincident nodes get a deterministic nudge
          dx = 0.01 + (i % 7) * 0.001;
          dy = 0.01 - (j % 5) * 0.001;
          d = Math.hypot(dx, dy);
        }
        const force = (k * k) / d;
        const fx = (dx / d) * force;
        const fy = (dy / d) * force;
        disp[i]!.x += fx;
        disp[i]!.y += fy;
        disp[j]!.x -= fx;
        disp[j]!.y -= fy;
      }
    }
    for (const [a, b] of edges) {
      let dx = pos[a]!.x - pos[b]!.x;
      let dy = pos[a]!.y - pos[b]!.y;
      let d = Math.hypot(dx, dy);
      if (d < 0.01) d = 0.01;
      const force = (d * d) / k;
      const fx = (dx / d) * force;
      const fy = (dy / d) * force;
      disp[a]!.x -= fx;
      disp[a]!.y -= fy;
      disp[b]!.x += fx;
      disp[b]!.y += fy;
    }
    for (let i = 0; i < n; i++) {
      const d = Math.hypot(disp[i]!.x, disp[i]!.y);
      if (d > 0) {
        const limited = Math.min(d, temperature);
        pos[i]!.x += (disp[i]!.x / d) * limited;
        pos[i]!.y += (disp[i]!.y / d) * limited;
      }
      pos[i]!.x = Math.min(width - 10, Math.max(10, pos[i]!.x));
      pos[i]!.y = Math.min(height - 10, Math.max(10, pos[i]!.y));
    }
    temperature = Math.max(temperature - cooling, 0.5);
  }

  const maxWeight = Math.max(...items.map((it) => it.weight), 0);
  const [lo, hi] = scoreRange(items);
  const nodes: LayoutNode[] = items.map((it, i) => ({
    id: it.id,
    label: it.label,
    weight: it.weight,
    x: pos[i]!.x,
    y: pos[i]!.y,
    r: radiusFor(it.weight, maxWeight),
    color: nodeColor(it, mode, lo, hi),
  }));
  const maxStrength = Math.max(...edges.map((e) => e[2]), 1);
  const layoutEdges: LayoutEdge[] = edges.map(([from, to, strength]) => ({
    from,
    to,
    width: 1 + 3 * (strength / maxStrength),
  }));
  return { nodes, edges: layoutEdges };
}
