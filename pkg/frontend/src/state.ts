// View state and version tracking.
//
// Everything a view renders is a function of (corpus, merge map, ViewState),
// so the whole ViewState must survive a serialize/restore round trip with
// the same server parameters coming out the other side.

import type { ClusterParams, CRTableParams, KeywordGraphParams, SpectrumParams } from "./api.js";

export type GraphMode = "keywords" | "countries";
export type ColorBy = "cluster" | "score";

export interface GraphViewState {
  mode: GraphMode;
  min_occ: number;
  min_pubs: number;
  color_by: ColorBy;
}

export interface ViewState {
  /** Inclusive [lo, hi] year selection on the spectrogram, null = everything. */
  spectrum_range: [number, number] | null;
  min_count: number;
  min_rpy: number;
  similarity: number;
  /** Band specs in server syntax, e.g. "1950-1999:50". */
  bands: string[];
  queue_cursor: number;
  graph: GraphViewState;
}

export function defaultViewState(): ViewState {
  return {
    spectrum_range: null,
    min_count: 1,
    min_rpy: 1900,
    similarity: 0.75,
    bands: [],
    queue_cursor: 0,
    graph: { mode: "keywords", min_occ: 5, min_pubs: 5, color_by: "cluster" },
  };
}

/**
 * The exact query parameters each view sends. Sliders and inputs edit
 * ViewState, ViewState produces these, and nothing else reaches the wire,
 * so what the user sees labelled as a threshold is what the server got.
 */
export interface RenderedParams {
  spectrum: SpectrumParams;
  crtable: CRTableParams;
  clusters: ClusterParams;
  keyword_graph: KeywordGraphParams;
  country_graph: { min_pubs: number; clustered: boolean; overlay: boolean };
}

export function renderedParams(state: ViewState): RenderedParams {
  const clustered = state.graph.color_by === "cluster";
  return {
    spectrum: { min_count: state.min_count, min_rpy: state.min_rpy },
    crtable: {
      min_count: state.min_count,
      min_rpy: state.min_rpy,
      bands: state.bands.length ? [...state.bands] : undefined,
    },
    clusters: { threshold: state.similarity, status: "pending" },
    keyword_graph: {
      min_occ: state.graph.min_occ,
      clustered,
      overlay: true,
    },
    country_graph: { min_pubs: state.graph.min_pubs, clustered, overlay: true },
  };
}

export function serializeViewState(state: ViewState): string {
  return JSON.stringify(state);
}

function asNumber(value: unknown, fallback: number): number {
  return typeof value === "number" && Number.isFinite(value) ? value : fallback;
}

/**
 * Parse a serialized ViewState, falling back to defaults field by field.
 * Unknown junk never throws; a hand-edited or truncated blob degrades to
 * the default view instead of a blank screen.
 */
export function restoreViewState(text: string): ViewState {
  const base = defaultViewState();
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return base;
  }
  if (typeof raw !== "object" || raw === null) return base;
  const obj = raw as Record<string, unknown>;

  if (
    Array.isArray(obj.spectrum_range) &&
    obj.spectrum_range.length === 2 &&
    obj.spectrum_range.every((v) => typeof v === "number")
  ) {
    base.spectrum_range = [obj.spectrum_range[0] as number, obj.spectrum_range[1] as number];
  }
  base.min_count = asNumber(obj.min_count, base.min_count);
  base.min_rpy = asNumber(obj.min_rpy, base.min_rpy);
  base.similarity = asNumber(obj.similarity, base.similarity);
  if (Array.isArray(obj.bands) && obj.bands.every((b) => typeof b === "string")) {
    base.bands = [...(obj.bands as string[])];
  }
  base.queue_cursor = asNumber(obj.queue_cursor, base.queue_cursor);
  if (typeof obj.graph === "object" && obj.graph !== null) {
    const g = obj.graph as Record<string, unknown>;
    if (g.mode === "keywords" || g.mode === "countries") base.graph.mode = g.mode;
    base.graph.min_occ = asNumber(g.min_occ, base.graph.min_occ);
    base.graph.min_pubs = asNumber(g.min_pubs, base.graph.min_pubs);
    if (g.color_by === "cluster" || g.color_by === "score") base.graph.color_by = g.color_by;
  }
  return base;
}

/**
 * Tracks the server's session version. Every payload carries `version`;
 * feeding them all through here keeps `current` at the newest seen value,
 * and any view rendered from an older version is stale.
 */
export class VersionTracker {
  private current = 0;

  observe(version: number): void {
    if (version > this.current) this.current = version;
  }

  get latest(): number {
    return this.current;
  }

  isStale(renderedVersion: number): boolean {
    return renderedVersion < this.current;
  }
}
