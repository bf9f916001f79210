// Typed HTTP client for the analysis service. This is the only channel
// the frontend has to the data: no file access, no local analytics.
//
// Reads may race freely; mutations carry an If-Version token and the
// server answers 409 when the token is stale. Callers catch
// StaleVersionError and refresh instead of retrying blindly.

import type {
  ClustersPayload,
  CRTablePayload,
  Decision,
  GraphPayload,
  MetaPayload,
  QueryPayload,
  SpectrumPayload,
  TrendCountsPayload,
  VersionedPayload,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class StaleVersionError extends ApiError {
  constructor(message: string) {
    super(409, message);
    this.name = "StaleVersionError";
  }
}

export interface SpectrumParams {
  min_count?: number;
  min_rpy?: number;
}

export interface CRTableParams {
  min_count?: number;
  min_rpy?: number;
  bands?: string[];
  top10?: boolean;
}

export interface ClusterParams {
  threshold?: number;
  volume_page?: boolean;
  status?: string;
}

export interface KeywordGraphParams {
  min_occ?: number;
  max_nodes?: number;
  resolution?: number;
  clustered?: boolean;
  overlay?: boolean;
}

export interface CountryGraphParams {
  min_pubs?: number;
  max_countries?: number;
  drop_disconnected?: boolean;
  resolution?: number;
  clustered?: boolean;
  overlay?: boolean;
}

type QueryValue = string | number | boolean | undefined;

interface RequestOptions {
  method?: "GET" | "POST";
  body?: unknown;
  ifVersion?: number;
  query?: Record<string, QueryValue>;
  repeated?: Record<string, string[] | undefined>;
}

async function errorDetail(res: Response): Promise<string> {
  const text = await res.text();
  try {
    const parsed = JSON.parse(text) as { detail?: unknown };
    if (typeof parsed.detail === "string") return parsed.detail;
  } catch {
    // not JSON, fall through to the raw body
  }
  return text || res.statusText;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string, opts: RequestOptions): string {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(opts.query ?? {})) {
      if (value !== undefined) params.append(key, String(value));
    }
    for (const [key, values] of Object.entries(opts.repeated ?? {})) {
      for (const value of values ?? []) params.append(key, value);
    }
    const qs = params.toString();
    return this.baseUrl + path + (qs ? `?${qs}` : "");
  }

  private async request<T>(path: string, opts: RequestOptions = {}): Promise<T> {
    const headers: Record<string, string> = {};
    if (opts.ifVersion !== undefined) headers["If-Version"] = String(opts.ifVersion);
    const init: RequestInit = { method: opts.method ?? "GET", headers };
    if (opts.body !== undefined) {
      headers["Content-Type"] = "application/json";
      init.body = JSON.stringify(opts.body);
    }
    const res = await this.fetchFn(this.url(path, opts), init);
    if (res.status === 409) throw new StaleVersionError(await errorDetail(res));
    if (!res.ok) throw new ApiError(res.status, await errorDetail(res));
    return (await res.json()) as T;
  }

  meta(ifVersion?: number): Promise<MetaPayload> {
    return this.request("/meta", { ifVersion });
  }

  runScript(script: string, ifVersion?: number): Promise<QueryPayload> {
    return this.request("/query", { method: "POST", body: { script }, ifVersion });
  }

  spectrum(params: SpectrumParams = {}, ifVersion?: number): Promise<SpectrumPayload> {
    return this.request("/spectrum", { query: { ...params }, ifVersion });
  }

  crtable(params: CRTableParams = {}, ifVersion?: number): Promise<CRTablePayload> {
    const { bands, ...rest } = params;
    return this.request("/crtable", {
      query: { ...rest },
      repeated: { band: bands },
      ifVersion,
    });
  }

  clusters(params: ClusterParams = {}, ifVersion?: number): Promise<ClustersPayload> {
    return this.request("/clusters", { query: { ...params }, ifVersion });
  }

  decide(
    clusterId: number,
    decision: Decision,
    ifVersion: number,
    canonical?: string,
  ): Promise<VersionedPayload> {
    return this.request(`/clusters/${clusterId}/decision`, {
      method: "POST",
      body: { decision, canonical: canonical ?? null },
      ifVersion,
    });
  }

  keywordGraph(params: KeywordGraphParams = {}, ifVersion?: number): Promise<GraphPayload> {
    return this.request("/graph/keywords", { query: { ...params }, ifVersion });
  }

  countryGraph(params: CountryGraphParams = {}, ifVersion?: number): Promise<GraphPayload> {
    return this.request("/graph/countries", { query: { ...params }, ifVersion });
  }

  trendCounts(set: string, ifVersion?: number): Promise<TrendCountsPayload> {
    return this.request("/trends/counts", { query: { set }, ifVersion });
  }
}
