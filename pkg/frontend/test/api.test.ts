import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, StaleVersionError, type FetchLike } from "../src/api.js";

interface Captured {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: string | null;
}

function fakeFetch(status: number, payload: unknown): { fetch: FetchLike; calls: Captured[] } {
  const calls: Captured[] = [];
  const fetch: FetchLike = async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: typeof init?.body === "string" ? init.body : null,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetch, calls };
}

describe("url building", () => {
  it("serializes query params and skips undefined ones", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 1, points: [] });
    const api = new ApiClient("http://x", fetch);
    await api.spectrum({ min_count: 2, min_rpy: 1950 });
    expect(calls[0]!.url).toBe("http://x/spectrum?min_count=2&min_rpy=1950");
    await api.spectrum({});
    expect(calls[1]!.url).toBe("http://x/spectrum");
  });

  it("repeats the band parameter once per band", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 1, rows: [] });
    const api = new ApiClient("http://x", fetch);
    await api.crtable({ min_count: 1, bands: ["1950-1999:50", "2000-2014:150"], top10: true });
    const url = new URL(calls[0]!.url);
    expect(url.searchParams.getAll("band")).toEqual(["1950-1999:50", "2000-2014:150"]);
    expect(url.searchParams.get("top10")).toBe("true");
    expect(url.searchParams.get("min_count")).toBe("1");
  });

  it("passes the set name to the trends endpoint", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 1, label: "x", points: [] });
    const api = new ApiClient("http://x", fetch);
    await api.trendCounts("hot");
    expect(calls[0]!.url).toBe("http://x/trends/counts?set=hot");
  });
});

describe("version tokens", () => {
  it("sends If-Version on mutations when given", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 2 });
    const api = new ApiClient("http://x", fetch);
    await api.decide(3, "accept", 1);
    expect(calls[0]!.method).toBe("POST");
    expect(calls[0]!.headers["If-Version"]).toBe("1");
    expect(calls[0]!.url).toBe("http://x/clusters/3/decision");
    expect(JSON.parse(calls[0]!.body!)).toEqual({ decision: "accept", canonical: null });
  });

  it("carries a custom canonical on edit decisions", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 2 });
    const api = new ApiClient("http://x", fetch);
    await api.decide(3, "edit", 1, "KALKSTEIN LS, 1997, CLIMATE RES, V9, P37");
    expect(JSON.parse(calls[0]!.body!)).toEqual({
      decision: "edit",
      canonical: "KALKSTEIN LS, 1997, CLIMATE RES, V9, P37",
    });
  });

  it("omits the header when no version is supplied", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 1, records: 0 });
    const api = new ApiClient("http://x", fetch);
    await api.meta();
    expect("If-Version" in calls[0]!.headers).toBe(false);
  });

  it("turns a 409 into StaleVersionError with the server detail", async () => {
    const { fetch } = fakeFetch(409, { detail: "stale version: have 3, got 1" });
    const api = new ApiClient("http://x", fetch);
    const err = await api.runScript("#a := heat", 1).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(StaleVersionError);
    expect((err as StaleVersionError).status).toBe(409);
    expect((err as StaleVersionError).message).toBe("stale version: have 3, got 1");
  });
});

describe("error mapping", () => {
  it("maps other failures to ApiError with the detail field", async () => {
    const { fetch } = fakeFetch(400, { detail: "min_count must be at least 1" });
    const api = new ApiClient("http://x", fetch);
    const err = await api.spectrum({ min_count: 0 }).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err).not.toBeInstanceOf(StaleVersionError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).message).toBe("min_count must be at least 1");
  });

  it("falls back to the raw body when the error is not JSON", async () => {
    const fetch: FetchLike = async () => new Response("gateway exploded", { status: 502 });
    const api = new ApiClient("http://x", fetch);
    const err = await api.meta().catch((e: unknown) => e);
    expect((err as ApiError).status).toBe(502);
    expect((err as ApiError).message).toBe("gateway exploded");
  });

  it("posts query scripts as JSON bodies", async () => {
    const { fetch, calls } = fakeFetch(200, { version: 1, sets: [] });
    const api = new ApiClient("http://x", fetch);
    await api.runScript("#m := mortality");
    expect(calls[0]!.url).toBe("http://x/query");
    expect(calls[0]!.headers["Content-Type"]).toBe("application/json");
    expect(JSON.parse(calls[0]!.body!)).toEqual({ script: "#m := mortality" });
  });
});
