// Merge review queue.
//
// Clusters are reviewed one at a time, biggest spectrum impact first:
// the queue orders by total member occurrences (the served `size`)
// descending, so accepting the head moves the picture the most. Each
// decision posts immediately; there is no local batching, and a 409 from
// a concurrent mutation flips the queue into needs-refresh instead of
// guessing at a merge state the server no longer has.

import type { Cluster, Decision } from "./types.js";

export interface QueueState {
  queue: Cluster[];
  cursor: number;
  /** Version the queue was fetched at; decisions send it as If-Version. */
  version: number;
  /** Set when the server reported a conflict; the UI prompts to refetch. */
  needsRefresh: boolean;
}

export function buildQueue(clusters: Cluster[], version: number): QueueState {
  const queue = clusters
    .filter((c) => c.status === "pending")
    .sort((a, b) => b.size - a.size || a.cluster_id - b.cluster_id);
  return { queue, cursor: 0, version, needsRefresh: false };
}

export function currentCluster(state: QueueState): Cluster | null {
  return state.queue[state.cursor] ?? null;
}

function clamp(cursor: number, length: number): number {
  if (length === 0) return 0;
  return Math.min(Math.max(cursor, 0), length - 1);
}

export function advance(state: QueueState): QueueState {
  return { ...state, cursor: clamp(state.cursor + 1, state.queue.length) };
}

export function retreat(state: QueueState): QueueState {
  return { ...state, cursor: clamp(state.cursor - 1, state.queue.length) };
}

/** Drop the decided cluster and keep the cursor on the next one. */
export function afterDecision(state: QueueState, clusterId: number, version: number): QueueState {
  const queue = state.queue.filter((c) => c.cluster_id !== clusterId);
  return { queue, cursor: clamp(state.cursor, queue.length), version, needsRefresh: false };
}

export function onConflict(state: QueueState): QueueState {
  return { ...state, needsRefresh: true };
}

export type ReviewAction =
  | { kind: "decide"; decision: Decision }
  | { kind: "next" }
  | { kind: "prev" };

/**
 * Keyboard protocol: a / r / e decide the current cluster, j and k (or
 * the arrow keys) move without deciding. Anything else is ignored.
 */
export function keyToAction(key: string): ReviewAction | null {
  switch (key) {
    case "a":
      return { kind: "decide", decision: "accept" };
    case "r":
      return { kind: "decide", decision: "reject" };
    case "e":
      return { kind: "decide", decision: "edit" };
    case "j":
    case "ArrowDown":
      return { kind: "next" };
    case "k":
    case "ArrowUp":
      return { kind: "prev" };
    default:
      return null;
  }
}

/** Suggested canonical string for a cluster, straight from the payload. */
export function suggestedCanonical(cluster: Cluster): string {
  const member = cluster.members[cluster.suggested_canonical];
  return member ? member.raw : "";
}
