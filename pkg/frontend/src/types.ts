// Payload shapes for the analysis service. Field names mirror the JSON
// wire format exactly (snake_case), so a parsed response is directly
// assignable and every rendered number stays traceable to a payload field.

export interface SetInfo {
  name: string;
  count: number;
  query: string;
}

export interface MetaPayload {
  version: number;
  records: number;
  reference_occurrences: number;
  unique_variants: number;
  merged_variants: number;
  merge_count: number;
  kernel: string;
  sets: SetInfo[];
}

export interface QueryPayload {
  version: number;
  sets: SetInfo[];
}

export interface SpectrumPoint {
  rpy: number;
  n_cr_total: number;
  median5: number;
  deviation: number;
}

export interface SpectrumPayload {
  version: number;
  points: SpectrumPoint[];
}

export interface CRRow {
  cr: string;
  rpy: number;
  n_cr: number;
  n_top10: number | null;
  selected: boolean;
  doi: string | null;
}

export interface CRTablePayload {
  version: number;
  rows: CRRow[];
}

export interface ClusterMember {
  raw: string;
  count: number;
}

export interface Cluster {
  cluster_id: number;
  rpy: number | null;
  /** Total occurrences across members, the review queue's ranking key. */
  size: number;
  /** Index into `members` of the server's canonical suggestion. */
  suggested_canonical: number;
  status: string;
  members: ClusterMember[];
}

export interface ClustersPayload {
  version: number;
  clusters: Cluster[];
}

export type Decision = "accept" | "reject" | "edit";

export interface GraphItem {
  id: number;
  label: string;
  weight: number;
  score: number | null;
  cluster: number | null;
}

export interface GraphLink {
  source_id: number;
  target_id: number;
  strength: number;
}

export interface GraphPayload {
  version: number;
  kind: string;
  params: Record<string, unknown>;
  items: GraphItem[];
  links: GraphLink[];
}

export interface TrendPoint {
  year: number;
  count: number;
}

export interface TrendCountsPayload {
  version: number;
  label: string;
  points: TrendPoint[];
}

export interface VersionedPayload {
  version: number;
}
