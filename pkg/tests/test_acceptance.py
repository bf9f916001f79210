"""End-to-end acceptance checks.

Each test covers one headline guarantee and registers a PASS/FAIL line that
the terminal summary reprints, with its runtime budget enforced here.
"""

from __future__ import annotations

import json
import random
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from time import perf_counter

import pytest

from conftest import make_citing_corpus, make_keyword_corpus, make_ref_pool
from oracles import all_pairs_keyword_graph, direct_median_spectrum, hash_count_table
from refspect.cli import main
from refspect.corpus import Corpus, RecordSet
from refspect.dedup import MergeChainError, MergeMap, apply_merges, validate_mapping
from refspect.graphs import keyword_cooccurrence
from refspect.query import evaluate, set_algebra
from refspect.records import CitingRecord
from refspect.refparse import parse_cited_ref
from refspect.rpys import Band, CRRow, CRTable, build_cr_table, select_key_refs, spectrum
from refspect.trends import percent_half_up, percent_text

RESULTS: list[tuple[str, str]] = []


@contextmanager
def criterion(name: str, budget: float | None = None):
    start = perf_counter()
    try:
        yield
    except BaseException:
        RESULTS.append((name, "FAIL"))
        raise
    elapsed = perf_counter() - start
    if budget is not None and elapsed > budget:
        RESULTS.append((name, f"FAIL (took {elapsed:.2f}s, budget {budget:g}s)"))
        raise AssertionError(f"{name}: took {elapsed:.2f}s, budget {budget:g}s")
    status = "PASS" if budget is None else f"PASS ({elapsed:.2f}s < {budget:g}s)"
    RESULTS.append((name, status))


_VOCAB = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta",
          "eta", "theta", "iota", "kappa", "lambda", "mu")


def _title_corpus(rng: random.Random, n_records: int) -> Corpus:
    records = []
    for i in range(n_records):
        words = rng.choices(_VOCAB, k=rng.randint(2, 6))
        records.append(CitingRecord(record_id=f"T{i:04d}", pub_year=rng.randint(1995, 2020), title=" ".join(words)))
    return Corpus(records)


def test_set_algebra_difference_union_identity():
    with criterion("set algebra: |S2 OR S4| == |S2| + |S4| when S4 comes from S1 NOT S2", budget=10):
        for seed in range(100):
            rng = random.Random(1000 + seed)
            corpus = _title_corpus(rng, rng.randint(40, 120))
            term_a, term_b = rng.sample(_VOCAB, 2)
            s1 = evaluate(term_a, corpus, name="#1")
            s2 = evaluate(term_b, corpus, name="#2")
            s3 = set_algebra("NOT", s1, s2, corpus)
            assert s3.ids == s1.ids - s2.ids
            subset = rng.sample(sorted(s3.ids), rng.randint(0, len(s3.ids)))
            s4 = RecordSet(name="#4", query="sampled", ids=frozenset(subset))
            union = set_algebra("OR", s2, s4, corpus)
            assert union.count == s2.count + s4.count


def test_reference_table_and_spectrum_match_naive_oracles():
    with criterion("citation table and spectrum equal brute-force oracles on 50 random corpora", budget=30):
        for seed in range(50):
            rng = random.Random(2000 + seed)
            pool, ref_rpy = make_ref_pool(rng, rng.randint(50, 250))
            corpus = make_citing_corpus(rng, rng.randint(30, 90), pool)
            assert sum(len(rec.cited_refs) for rec in corpus.records) <= 2000
            mapping = {}
            if seed % 3:
                sampled = rng.sample(pool, 20)
                mapping = dict(zip(sampled[:10], sampled[10:]))
            min_rpy = rng.choice([1900, 1960, 1990])
            min_count = rng.choice([1, 1, 2])
            table = build_cr_table(corpus, mapping, min_rpy=min_rpy, min_count=min_count)
            got = {(r.rpy, r.canonical.raw): r.n_cr for r in table.rows}
            assert got == hash_count_table(corpus.records, ref_rpy, mapping, min_rpy, min_count)

            totals: dict[int, int] = {}
            for row in table.rows:
                totals[row.rpy] = totals.get(row.rpy, 0) + row.n_cr
            oracle = direct_median_spectrum(totals)
            points = spectrum(table)
            assert len(points) == len(oracle)
            for p in points:
                assert (p.n_cr_total, p.median5, p.deviation) == oracle[p.rpy]


def _totals_table(totals: dict[int, int]) -> CRTable:
    rows = tuple(
        CRRow(canonical=parse_cited_ref(f"A, {year}, X"), rpy=year, n_cr=n)
        for year, n in sorted(totals.items())
    )
    return CRTable(rows=rows, provenance={}, mapping={})


def test_five_year_median_deviation_contract():
    with criterion("five-year median: progressions flatten to 0, lone spike deviates by 348", budget=1):
        for start, step in ((5, 3), (200, -11), (17, 0), (1, 1)):
            totals = {2000 + i: start + step * i for i in range(11)}
            if min(totals.values()) < 0:
                continue
            for point in spectrum(_totals_table(totals))[2:-2]:
                assert point.deviation == 0
                assert isinstance(point.deviation, Fraction)
        points = spectrum(_totals_table({2000: 10, 2001: 12, 2002: 368, 2003: 40, 2004: 20}))
        assert points[2].median5 == 20
        assert points[2].deviation == 348


# (rpy, n_cr) rows the band selection must pick out, plus near-miss decoys
# placed just outside every band edge and threshold.
_EMBEDDED_PAIRS = (
    (1945, 94), (1968, 108), (1972, 72), (1973, 81), (1979, 110), (1980, 62),
    (1982, 175), (1982, 107), (1982, 88), (1984, 112), (1984, 52), (1986, 59),
    (1986, 53), (1987, 71), (1989, 87), (1989, 65), (1989, 53), (1992, 85),
    (1993, 74), (1993, 52), (1995, 52), (1996, 368), (1996, 327), (1996, 106),
    (1996, 84), (1996, 63), (1997, 180), (1997, 116), (1997, 105), (1997, 74),
    (1997, 72), (1997, 53), (1997, 53), (1997, 50), (1998, 105), (1998, 81),
    (1998, 55), (1998, 53), (1999, 200), (1999, 91), (1999, 56), (1999, 52),
    (2000, 275), (2001, 277), (2001, 203), (2002, 286), (2002, 279), (2002, 233),
    (2002, 156), (2004, 1099), (2004, 562), (2004, 326), (2004, 232), (2004, 209),
    (2004, 180), (2004, 152), (2005, 313), (2005, 161), (2005, 157), (2006, 298),
    (2006, 257), (2006, 190), (2006, 180), (2006, 177), (2006, 153), (2007, 238),
    (2007, 156), (2008, 372), (2008, 287), (2008, 178), (2008, 175), (2008, 160),
    (2009, 339), (2009, 212), (2009, 205), (2010, 282), (2010, 208), (2010, 208),
    (2010, 196), (2011, 381), (2011, 355), (2011, 303), (2011, 198), (2011, 154),
    (2012, 243), (2012, 236), (2012, 204), (2013, 289), (2013, 159), (2014, 197),
    (2014, 171), (2015, 182), (2015, 168), (2015, 159), (2015, 131), (2015, 111),
    (2016, 197), (2016, 121), (2016, 113), (2017, 125), (2017, 112), (2018, 209),
    (2018, 124), (2019, 126),
)
_DECOY_PAIRS = (
    (1899, 1000), (1949, 49), (1999, 49), (2000, 149), (2014, 149),
    (2015, 99), (2020, 99), (2021, 500),
)
# one embedded row predates the tighter band start used in print summaries
_EDGE_PAIR = (1945, 94)


def _band_fixture_table() -> CRTable:
    rows = []
    for i, (rpy, n_cr) in enumerate(_EMBEDDED_PAIRS):
        raw = f"KEY{i:03d} A, {rpy}, SRC"
        rows.append(CRRow(canonical=parse_cited_ref(raw), rpy=rpy, n_cr=n_cr))
    for i, (rpy, n_cr) in enumerate(_DECOY_PAIRS):
        raw = f"DEC{i:03d} A, {rpy}, SRC"
        rows.append(CRRow(canonical=parse_cited_ref(raw), rpy=rpy, n_cr=n_cr))
    rows.sort(key=lambda r: (r.rpy, -r.n_cr, r.canonical.raw))
    return CRTable(rows=tuple(rows), provenance={}, mapping={})


def test_band_selection_picks_exactly_the_embedded_rows():
    with criterion("band selection: 104 embedded rows in, every decoy out", budget=1):
        assert len(_EMBEDDED_PAIRS) == 104
        table = _band_fixture_table()
        bands = [Band(1900, 1999, 50), Band(2000, 2014, 150), Band(2015, 2020, 100)]
        selected = select_key_refs(table, bands)
        assert {r.canonical.raw for r in selected} == {
            r.canonical.raw for r in table.rows if r.canonical.raw.startswith("KEY")
        }
        assert len(selected) == 104
        assert all(r.selected for r in selected)

        # the tighter 1950 edge drops exactly the one pre-1950 row
        tight = select_key_refs(table, [Band(1950, 1999, 50), Band(2000, 2014, 150), Band(2015, 2020, 100)])
        assert len(tight) == 103
        missing = {(r.rpy, r.n_cr) for r in selected} - {(r.rpy, r.n_cr) for r in tight}
        assert missing == {_EDGE_PAIR}


def test_merge_maps_conserve_counts_and_never_chain():
    with criterion("merges: counts conserved, reapplication is a no-op, chains rejected (1000 maps)", budget=10):
        for seed in range(1000):
            rng = random.Random(3000 + seed)
            raws = [f"CR-{i:02d}" for i in range(rng.randint(2, 20))]
            merge_map = MergeMap()
            for _ in range(rng.randint(0, 15)):
                variant, canonical = rng.sample(raws, 2)
                merge_map.record(variant, canonical, rng.choice(["accept", "accept", "reject"]))
            validate_mapping(merge_map.mapping)
            counts = {raw: rng.randint(1, 50) for raw in rng.sample(raws, rng.randint(1, len(raws)))}
            merged = apply_merges(counts, merge_map)
            assert sum(merged.values()) == sum(counts.values())
            assert apply_merges(merged, merge_map) == merged
            if len(merge_map.mapping) >= 1 and seed % 10 == 0:
                variant, canonical = next(iter(merge_map.mapping.items()))
                chained = dict(merge_map.mapping)
                chained[canonical] = variant if chained.get(variant) != variant else canonical
                with pytest.raises(MergeChainError):
                    validate_mapping(chained)


def test_half_up_percentages_reproduce_published_rows():
    with criterion("half-up percentages: 2081/8011 -> 26.0 and 1026/8011 -> 12.8", budget=1):
        assert percent_half_up(2081, 8011) == 26.0
        assert percent_half_up(1026, 8011) == 12.8
        assert percent_text(2081, 8011) == "26.0"
        assert percent_text(1026, 8011) == "12.8"


def test_keyword_graph_equivalence_and_threshold_boundary():
    with criterion("keyword graph: edge weights equal all-pairs oracle, threshold 10 drops <=9", budget=20):
        for seed in range(50):
            rng = random.Random(4000 + seed)
            corpus = make_keyword_corpus(rng, rng.randint(30, 100))
            min_occ = rng.choice([1, 2, 5])
            graph = keyword_cooccurrence(corpus, min_occurrences=min_occ)
            want_nodes, want_pairs = all_pairs_keyword_graph(corpus.records, min_occ)
            assert {n.label: n.weight for n in graph.nodes} == want_nodes
            got_pairs = {
                (graph.nodes[e.a].label, graph.nodes[e.b].label): e.weight for e in graph.edges
            }
            assert got_pairs == want_pairs

            all_counts, _ = all_pairs_keyword_graph(corpus.records, 1)
            kept = {n.label for n in keyword_cooccurrence(corpus, min_occurrences=10).nodes}
            assert kept == {label for label, n in all_counts.items() if n >= 10}
            assert all(all_counts[label] <= 9 for label in set(all_counts) - kept)


def test_cli_outputs_are_deterministic(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("REFSPECT_CORPUS", raising=False)
    with criterion("CLI determinism: reruns byte-identical, worker count irrelevant"):
        sample = Path(__file__).parent / "fixtures" / "sample.tagged.txt"
        one, four = tmp_path / "one", tmp_path / "four"
        assert main(["ingest", str(sample), "--out", str(one), "--workers", "1"]) == 0
        assert main(["ingest", str(sample), "--out", str(four), "--workers", "4"]) == 0
        for name in ("corpus.json", "index.json"):
            assert (one / name).read_bytes() == (four / name).read_bytes()
        corpus = str(one)

        script = tmp_path / "q.rq"
        script.write_text("#hot := heat\n", encoding="utf-8")
        capsys.readouterr()  # drop the ingest progress lines
        assert main(["query", "--corpus", corpus, "--script", str(script), "--save"]) == 0
        first_out = capsys.readouterr().out
        assert main(["query", "--corpus", corpus, "--script", str(script)]) == 0
        assert capsys.readouterr().out == first_out

        reruns = [
            ["dedup", "suggest", "--corpus", corpus, "--out"],
            ["rpys", "--corpus", corpus, "--bands", "1990-2000:8", "--top10", "--out-csv"],
            ["graph", "keywords", "--corpus", corpus, "--min-occ", "5", "--out"],
            ["graph", "countries", "--corpus", corpus, "--out"],
            ["trend", "counts", "--corpus", corpus, "--out"],
            ["trend", "countries", "--corpus", corpus, "--out"],
            ["trend", "share", "--corpus", corpus, "--num", "hot", "--den", "", "--out"],
        ]
        merges = tmp_path / "merges.json"
        merges.write_text(json.dumps(MergeMap().to_json()), encoding="utf-8")
        reruns.append(["dedup", "apply", "--corpus", corpus, "--merges", str(merges), "--out"])
        for i, argv in enumerate(reruns):
            a, b = tmp_path / f"out{i}a", tmp_path / f"out{i}b"
            assert main(argv + [str(a)]) == 0
            assert main(argv + [str(b)]) == 0
            assert a.read_bytes() == b.read_bytes(), argv[:2]
