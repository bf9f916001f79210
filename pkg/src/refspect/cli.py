"""Command-line entry points for the analysis pipeline.

Exit codes: 0 success, 1 user error (bad arguments, missing files, parse
failures), 2 internal error. All outputs are deterministic for fixed inputs
and flags, whatever the worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import ingest, store, trends
from .corpus import Corpus
from .dedup import MergeMap, apply_merges, suggest_clusters
from .graphs import cluster_graph, country_coauthorship, export_graph, keyword_cooccurrence, overlay_mean_year
from .query import EvaluationError, ParseError
from .rpys import build_cr_table, export_cr_table, export_spectrum, n_top10, parse_bands, spectrum
from .session import Session

ENV_CORPUS = "REFSPECT_CORPUS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract wants 1 for user errors
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="refspect", description="Bibliometric analysis workbench")
    sub = parser.add_subparsers(dest="command")

    def add_corpus_arg(p):
        p.add_argument(
            "--corpus",
            default=os.environ.get(ENV_CORPUS),
            help=f"corpus directory (default: ${ENV_CORPUS})",
        )

    p = sub.add_parser("ingest", help="parse an export file into a corpus directory")
    p.add_argument("file")
    p.add_argument("--format", choices=ingest.FORMATS, default=ingest.TAGGED_TEXT)
    p.add_argument("--out", required=True, help="corpus directory to create")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("query", help="run a query script against a corpus")
    add_corpus_arg(p)
    p.add_argument("--script", required=True, help="file with one '#name := query' per line")
    p.add_argument("--save", action="store_true", help="persist resulting sets into the corpus directory")

    p = sub.add_parser("dedup", help="reference-variant clustering and merging")
    dedup_sub = p.add_subparsers(dest="dedup_command")
    ps = dedup_sub.add_parser("suggest", help="suggest merge clusters")
    add_corpus_arg(ps)
    ps.add_argument("--threshold", type=float, default=0.75)
    ps.add_argument("--volume-page", action="store_true")
    ps.add_argument("--out", help="write clusters JSON here instead of stdout")
    pa = dedup_sub.add_parser("apply", help="apply a merge map to the reference table")
    add_corpus_arg(pa)
    pa.add_argument("--merges", required=True, help="merge map JSON file")
    pa.add_argument("--out", help="write merged variant counts CSV here instead of stdout")

    p = sub.add_parser("rpys", help="cited-reference spectroscopy outputs")
    add_corpus_arg(p)
    p.add_argument("--merges", help="merge map JSON file")
    p.add_argument("--min-rpy", type=int, default=1900)
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--bands", help="selection bands, e.g. 1950-1999:50,2000-2014:150")
    p.add_argument("--top10", action="store_true", help="fill the top-decile indicator")
    p.add_argument("--out-csv", help="CR table CSV path (default stdout)")
    p.add_argument("--spectrum-csv", help="also write the spectrum CSV here")

    p = sub.add_parser("graph", help="co-occurrence / co-authorship graphs")
    graph_sub = p.add_subparsers(dest="graph_command")
    pk = graph_sub.add_parser("keywords")
    add_corpus_arg(pk)
    pk.add_argument("--min-occ", type=int, default=1)
    pk.add_argument("--max-nodes", type=int)
    pk.add_argument("--resolution", type=float, default=1.0)
    pk.add_argument("--no-cluster", action="store_true")
    pk.add_argument("--format", choices=("graph_json", "pajek"), default="graph_json")
    pk.add_argument("--out")
    pc = graph_sub.add_parser("countries")
    add_corpus_arg(pc)
    pc.add_argument("--min-pubs", type=int, default=1)
    pc.add_argument("--max-countries", type=int, default=25)
    pc.add_argument("--drop-disconnected", action="store_true")
    pc.add_argument("--resolution", type=float, default=1.0)
    pc.add_argument("--no-cluster", action="store_true")
    pc.add_argument("--format", choices=("graph_json", "pajek"), default="graph_json")
    pc.add_argument("--out")

    p = sub.add_parser("trend", help="publication trend analytics")
    trend_sub = p.add_subparsers(dest="trend_command")
    pt = trend_sub.add_parser("counts")
    add_corpus_arg(pt)
    pt.add_argument("--set", help="saved set name (default: whole corpus)")
    pt.add_argument("--out")
    pg = trend_sub.add_parser("growth")
    add_corpus_arg(pg)
    pg.add_argument("--set")
    pg.add_argument("--y0", type=int, required=True)
    pg.add_argument("--y1", type=int, required=True)
    psh = trend_sub.add_parser("share")
    add_corpus_arg(psh)
    psh.add_argument("--num", required=True, help="numerator set name")
    psh.add_argument("--den", required=True, help="denominator set name")
    psh.add_argument("--out")
    pcn = trend_sub.add_parser("countries")
    add_corpus_arg(pcn)
    pcn.add_argument("--min-papers", type=int, default=0)
    pcn.add_argument("--reference", help="reference corpus directory")
    pcn.add_argument("--out")

    p = sub.add_parser("serve", help="run the local analysis service")
    add_corpus_arg(p)
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def _load_corpus(args) -> Corpus:
    if not args.corpus:
        raise UsageError("no corpus directory given (use --corpus or set REFSPECT_CORPUS)")
    return store.load_corpus(args.corpus)


def _whole_corpus_set(corpus: Corpus):
    from .corpus import RecordSet

    return RecordSet(name="corpus", query="corpus", ids=corpus.all_ids)


def _resolve_set(args, corpus: Corpus, name: str | None):
    if not name:
        return _whole_corpus_set(corpus)
    return store.load_set(args.corpus, name)


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _occurrence_counts(corpus: Corpus) -> dict[str, int]:
    counts: dict[str, int] = {}
    for _, raw in corpus.cited_refs():
        counts[raw] = counts.get(raw, 0) + 1
    return counts


def _cmd_ingest(args) -> int:
    records, warnings = ingest.parse_export_file(args.file, format=args.format, workers=args.workers)
    corpus = Corpus(records)
    store.save_corpus(corpus, args.out)
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"{len(records)} records -> {args.out} ({len(warnings)} warnings)")
    return 0


def _cmd_query(args) -> int:
    corpus = _load_corpus(args)
    existing = {name if name.startswith("#") else f"#{name}": store.load_set(args.corpus, name) for name in store.list_sets(args.corpus)}
    script = Path(args.script).read_text(encoding="utf-8")
    session = Session(corpus)
    session.sets.update(existing)
    _, defined = session.run_query_script(script)
    for name, record_set in defined.items():
        print(f"{name}\t{record_set.count}\t{record_set.query}")
        if args.save:
            store.save_set(record_set, args.corpus)
    return 0


def _cmd_dedup(args) -> int:
    if args.dedup_command == "suggest":
        corpus = _load_corpus(args)
        refs = [raw for _, raw in corpus.cited_refs()]
        clusters = suggest_clusters(refs, threshold=args.threshold, use_volume_page=args.volume_page)
        text = json.dumps([c.to_json() for c in clusters], indent=1, sort_keys=True) + "\n"
        _write(text, args.out)
        return 0
    if args.dedup_command == "apply":
        corpus = _load_corpus(args)
        merge_map = MergeMap.from_json(json.loads(Path(args.merges).read_text(encoding="utf-8")))
        merged = apply_merges(_occurrence_counts(corpus), merge_map)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["CR", "COUNT"])
        for raw in sorted(merged, key=lambda r: (-merged[r], r)):
            writer.writerow([raw, merged[raw]])
        _write(buffer.getvalue(), args.out)
        return 0
    raise UsageError("dedup needs a subcommand: suggest or apply")


def _cmd_rpys(args) -> int:
    corpus = _load_corpus(args)
    merge_map = None
    if args.merges:
        merge_map = MergeMap.from_json(json.loads(Path(args.merges).read_text(encoding="utf-8")))
    table = build_cr_table(corpus, merge_map, min_rpy=args.min_rpy, min_count=args.min_count)
    if args.top10:
        table = n_top10(table, corpus)
    bands = parse_bands(args.bands) if args.bands else None
    _write(export_cr_table(table, bands=bands), args.out_csv)
    if args.spectrum_csv:
        _write(export_spectrum(spectrum(table)), args.spectrum_csv)
    return 0


def _cmd_graph(args) -> int:
    if args.graph_command not in ("keywords", "countries"):
        raise UsageError("graph needs a subcommand: keywords or countries")
    corpus = _load_corpus(args)
    if args.graph_command == "keywords":
        graph = keyword_cooccurrence(corpus, min_occurrences=args.min_occ, max_nodes=args.max_nodes)
    elif args.graph_command == "countries":
        graph = country_coauthorship(
            corpus,
            min_pubs=args.min_pubs,
            max_countries_per_paper=args.max_countries,
            drop_disconnected=args.drop_disconnected,
        )
    graph = overlay_mean_year(graph, corpus)
    if not args.no_cluster:
        graph = cluster_graph(graph, resolution=args.resolution)
    _write(export_graph(graph, format=args.format), args.out)
    return 0


def _cmd_trend(args) -> int:
    if args.trend_command not in ("counts", "growth", "share", "countries"):
        raise UsageError("trend needs a subcommand: counts, growth, share, or countries")
    corpus = _load_corpus(args)
    if args.trend_command == "counts":
        series = trends.annual_counts(_resolve_set(args, corpus, args.set), corpus)
        _write(trends.export_series(series), args.out)
        return 0
    if args.trend_command == "growth":
        series = trends.annual_counts(_resolve_set(args, corpus, args.set), corpus)
        factor = trends.growth_factor(series, args.y0, args.y1)
        print(f"{args.y0} -> {args.y1}: x{float(factor):g} ({factor.numerator}/{factor.denominator})")
        return 0
    if args.trend_command == "share":
        num = _resolve_set(args, corpus, args.num)
        den = _resolve_set(args, corpus, args.den)
        shares = trends.share_series(num, den, corpus)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["year", "share_pct"])
        for year, share in shares.items():
            writer.writerow([year, "" if share is None else f"{float(share):.6g}"])
        _write(buffer.getvalue(), args.out)
        return 0
    reference = store.load_corpus(args.reference) if args.reference else None
    rows = trends.country_table(corpus, reference_corpus=reference, min_papers=args.min_papers)
    ref_size = len(reference.records) if reference else 0
    _write(trends.export_country_table(rows, len(corpus.records), ref_size), args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    corpus = _load_corpus(args)
    app = create_app(Session(corpus))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "query": _cmd_query,
    "dedup": _cmd_dedup,
    "rpys": _cmd_rpys,
    "graph": _cmd_graph,
    "trend": _cmd_trend,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_usage(sys.stderr)
            return 1
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, NotADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (store.StoreError, ingest.FormatError, ParseError, EvaluationError, trends.TrendError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1
    except Exception as exc:  # anything unexpected is an internal error
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
