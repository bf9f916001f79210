"""Local HTTP/JSON service for the explorer frontend.

Single-process, no auth: a curation tool bound to localhost. Every response
carries the session's version token; mutations that send a stale
``If-Version`` are rejected with 409 so a client can never act on a view it
knows is outdated. Reads may send ``If-Version`` too; a token from the
future (greater than the server's) is a protocol error and 409s.
"""

from __future__ import annotations

from fastapi import FastAPI, Header, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .graphs import cluster_graph, country_coauthorship, graph_to_json, keyword_cooccurrence, overlay_mean_year
from .query import EvaluationError, ParseError
from .rpys import build_cr_table, export_cr_table, n_top10, parse_band, select_key_refs, spectrum
from .session import Session
from .trends import annual_counts
from .dedup.backend import BACKEND


class QueryBody(BaseModel):
    script: str


class DecisionBody(BaseModel):
    decision: str
    canonical: str | None = None


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="refspect", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    def check_read(if_version: int | None) -> None:
        if if_version is not None and if_version > session.version:
            raise HTTPException(409, f"version {if_version} is ahead of server version {session.version}")

    def check_write(if_version: int | None) -> None:
        if if_version is not None and if_version != session.version:
            raise HTTPException(409, f"stale version {if_version}, server is at {session.version}")

    def table_for(min_count: int, min_rpy: int, top10: bool):
        def compute():
            table = build_cr_table(session.corpus, session.merge_map, min_rpy=min_rpy, min_count=min_count)
            return n_top10(table, session.corpus) if top10 else table

        return session.cached(("crtable", min_count, min_rpy, top10), compute)

    @app.get("/meta")
    def meta(if_version: int | None = Header(default=None)):
        check_read(if_version)
        occurrences = session.occurrence_counts()
        return {
            "version": session.version,
            "records": len(session.corpus),
            "reference_occurrences": sum(occurrences.values()),
            "unique_variants": len(occurrences),
            "merged_variants": len(session.merged_counts()),
            "merge_count": len(session.merge_map),
            "kernel": BACKEND,
            "sets": [
                {"name": s.name, "count": s.count, "query": s.query}
                for s in session.sets.values()
            ],
        }

    @app.post("/query")
    def post_query(body: QueryBody, if_version: int | None = Header(default=None)):
        check_write(if_version)
        try:
            version, defined = session.run_query_script(body.script)
        except (ParseError, EvaluationError) as exc:
            raise HTTPException(400, str(exc))
        return {
            "version": version,
            "sets": [{"name": s.name, "count": s.count, "query": s.query} for s in defined.values()],
        }

    @app.get("/spectrum")
    def get_spectrum(
        min_count: int = 1,
        min_rpy: int = 1900,
        if_version: int | None = Header(default=None),
    ):
        check_read(if_version)
        try:
            table = table_for(min_count, min_rpy, top10=False)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        points = session.cached(("spectrum", min_count, min_rpy), lambda: spectrum(table))
        return {
            "version": session.version,
            "points": [
                {
                    "rpy": p.rpy,
                    "n_cr_total": p.n_cr_total,
                    "median5": float(p.median5),
                    "deviation": float(p.deviation),
                }
                for p in points
            ],
        }

    @app.get("/crtable")
    def get_crtable(
        min_count: int = 1,
        min_rpy: int = 1900,
        band: list[str] | None = Query(default=None),
        top10: bool = False,
        if_version: int | None = Header(default=None),
    ):
        check_read(if_version)
        try:
            bands = [parse_band(b) for b in band] if band else None
            table = table_for(min_count, min_rpy, top10)
            selected = set()
            if bands:
                selected = {row.canonical.raw for row in select_key_refs(table, bands)}
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {
            "version": session.version,
            "rows": [
                {
                    "cr": row.canonical.raw,
                    "rpy": row.rpy,
                    "n_cr": row.n_cr,
                    "n_top10": row.n_top10,
                    "selected": row.canonical.raw in selected,
                    "doi": row.canonical.doi,
                }
                for row in table.rows
            ],
        }

    @app.get("/crtable.csv")
    def get_crtable_csv(
        min_count: int = 1,
        min_rpy: int = 1900,
        band: list[str] | None = Query(default=None),
        top10: bool = False,
        if_version: int | None = Header(default=None),
    ):
        check_read(if_version)
        try:
            bands = [parse_band(b) for b in band] if band else None
            table = table_for(min_count, min_rpy, top10)
            text = export_cr_table(table, bands=bands)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return PlainTextResponse(text, media_type="text/csv")

    @app.get("/clusters")
    def get_clusters(
        threshold: float = 0.75,
        volume_page: bool = False,
        status: str = "pending",
        if_version: int | None = Header(default=None),
    ):
        check_read(if_version)
        if not 0.0 <= threshold <= 1.0:
            raise HTTPException(400, f"threshold must be in [0, 1], got {threshold}")
        clusters = session.clusters(threshold, volume_page)
        listed = [c for c in clusters if status in ("all", c.status)]
        return {"version": session.version, "clusters": [c.to_json() for c in listed]}

    @app.post("/clusters/{cluster_id}/decision")
    def post_decision(
        cluster_id: int,
        body: DecisionBody,
        if_version: int | None = Header(default=None),
    ):
        check_write(if_version)
        try:
            version = session.decide_cluster(cluster_id, body.decision, body.canonical)
        except KeyError:
            raise HTTPException(404, f"unknown cluster {cluster_id}")
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {"version": version}

    @app.get("/graph/keywords")
    def get_keyword_graph(
        min_occ: int = 1,
        max_nodes: int | None = None,
        resolution: float = 1.0,
        clustered: bool = True,
        overlay: bool = True,
        if_version: int | None = Header(default=None),
    ):
        check_read(if_version)

        def compute():
            graph = keyword_cooccurrence(session.corpus, min_occurrences=min_occ, max_nodes=max_nodes)
            if overlay:
                graph = overlay_mean_year(graph, session.corpus)
            if clustered:
                graph = cluster_graph(graph, resolution=resolution)
            return graph

        try:
            graph = session.cached(("kwgraph", min_occ, max_nodes, resolution, clustered, overlay), compute)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {"version": session.version, **graph_to_json(graph)}

    @app.get("/graph/countries")
    def get_country_graph(
        min_pubs: int = 1,
        max_countries: int = 25,
        drop_disconnected: bool = False,
        resolution: float = 1.0,
        clustered: bool = True,
        overlay: bool = True,
        if_version: int | None = Header(default=None),
    ):
        check_read(if_version)

        def compute():
            graph = country_coauthorship(
                session.corpus,
                min_pubs=min_pubs,
                max_countries_per_paper=max_countries,
                drop_disconnected=drop_disconnected,
            )
            if overlay:
                graph = overlay_mean_year(graph, session.corpus)
            if clustered:
                graph = cluster_graph(graph, resolution=resolution)
            return graph

        try:
            graph = session.cached(
                ("ccgraph", min_pubs, max_countries, drop_disconnected, resolution, clustered, overlay), compute
            )
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {"version": session.version, **graph_to_json(graph)}

    @app.get("/trends/counts")
    def get_counts(set: str, if_version: int | None = Header(default=None)):
        check_read(if_version)
        record_set = session.sets.get(set) or session.sets.get(f"#{set}")
        if record_set is None:
            raise HTTPException(404, f"unknown set {set!r}")
        series = annual_counts(record_set, session.corpus)
        return {
            "version": session.version,
            "label": series.label,
            "points": [{"year": year, "count": series[year]} for year in series.years],
        }

    return app
