"""Cited-reference spectroscopy: per-year reference counts, the five-year
median deviation curve, period-banded key-reference selection, and the
per-reference top-decile year indicator.

All medians and deviations are exact rationals; nothing in this module
rounds. A citing paper contributes at most 1 to a canonical reference's
count even when its reference list carries two variants that merge onto the
same canonical string.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import IO, Iterable, Mapping, Sequence

from .corpus import Corpus
from .dedup import MergeMap
from .records import CitedRefFields
from .refparse import parse_cited_ref


@dataclass(frozen=True)
class CRRow:
    canonical: CitedRefFields
    rpy: int
    n_cr: int
    n_top10: int | None = None
    selected: bool = False


@dataclass(frozen=True)
class Band:
    rpy_lo: int
    rpy_hi: int
    min_n_cr: int

    def __post_init__(self):
        if self.rpy_lo > self.rpy_hi:
            raise ValueError(f"band range is reversed: {self.rpy_lo}-{self.rpy_hi}")
        if self.min_n_cr < 1:
            raise ValueError(f"band minimum must be >= 1, got {self.min_n_cr}")


@dataclass(frozen=True)
class CRTable:
    rows: tuple[CRRow, ...]
    provenance: dict
    #: variant -> canonical rewrites used to build the table; kept so the
    #: top-decile indicator ranks against the same merged population
    mapping: dict

    def total_count(self) -> int:
        return sum(row.n_cr for row in self.rows)


@dataclass(frozen=True)
class SpectrumPoint:
    rpy: int
    n_cr_total: int
    median5: Fraction
    deviation: Fraction


def _mapping_of(merge_map: MergeMap | Mapping[str, str] | None) -> tuple[dict[str, str], int]:
    if merge_map is None:
        return {}, 0
    if isinstance(merge_map, MergeMap):
        return dict(merge_map._map), len(merge_map.log)
    return dict(merge_map), len(merge_map)


def _canonical_counts(corpus: Corpus, mapping: dict[str, str]) -> tuple[dict[str, int], dict[str, dict[int, int]]]:
    """Per-canonical citing-paper counts, total and by citing year."""
    totals: dict[str, int] = {}
    by_year: dict[str, dict[int, int]] = {}
    for rec in corpus.records:
        canonicals = {mapping.get(raw, raw) for raw in rec.cited_refs}
        for canonical in canonicals:
            totals[canonical] = totals.get(canonical, 0) + 1
            years = by_year.setdefault(canonical, {})
            years[rec.pub_year] = years.get(rec.pub_year, 0) + 1
    return totals, by_year


def build_cr_table(
    corpus: Corpus,
    merge_map: MergeMap | Mapping[str, str] | None = None,
    min_rpy: int = 1900,
    min_count: int = 1,
) -> CRTable:
    """Count canonical references and keep rows passing the filters.

    References whose string yields no publication year cannot appear in the
    table (every row needs an rpy). Rows are sorted by (rpy, -n_cr, raw).
    """
    if min_rpy < 1000:
        raise ValueError(f"min_rpy must be a calendar year >= 1000, got {min_rpy}")
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    mapping, version = _mapping_of(merge_map)
    totals, _ = _canonical_counts(corpus, mapping)
    rows = []
    for raw in sorted(totals):
        fields = parse_cited_ref(raw)
        if fields.rpy is None or fields.rpy < min_rpy:
            continue
        if totals[raw] < min_count:
            continue
        rows.append(CRRow(canonical=fields, rpy=fields.rpy, n_cr=totals[raw]))
    rows.sort(key=lambda r: (r.rpy, -r.n_cr, r.canonical.raw))
    provenance = {"min_rpy": min_rpy, "min_count": min_count, "merge_map_version": version}
    return CRTable(rows=tuple(rows), provenance=provenance, mapping=mapping)


def _median(values: Sequence[int]) -> Fraction:
    ordered = sorted(values)
    n = len(ordered)
    if n % 2 == 1:
        return Fraction(ordered[n // 2])
    return Fraction(ordered[n // 2 - 1] + ordered[n // 2], 2)


def spectrum(table: CRTable) -> list[SpectrumPoint]:
    """Per-RPY totals with the five-year-median deviation.

    Years between the table's min and max rpy are zero-filled. The median
    window is rpy-2..rpy+2 clipped to the series bounds, so edge years use
    3- or 4-point windows; an even window's median is the mean of its two
    central values.
    """
    if not table.rows:
        return []
    totals: dict[int, int] = {}
    for row in table.rows:
        totals[row.rpy] = totals.get(row.rpy, 0) + row.n_cr
    lo, hi = min(totals), max(totals)
    years = list(range(lo, hi + 1))
    series = [totals.get(y, 0) for y in years]
    points = []
    for i, year in enumerate(years):
        window = series[max(0, i - 2) : min(len(series), i + 3)]
        median5 = _median(window)
        points.append(
            SpectrumPoint(rpy=year, n_cr_total=series[i], median5=median5, deviation=series[i] - median5)
        )
    return points


def parse_band(text: str) -> Band:
    """Band from text like ``1950-1999:50``."""
    try:
        years, min_n = text.split(":")
        lo, hi = years.split("-")
        return Band(int(lo), int(hi), int(min_n))
    except ValueError:
        raise ValueError(f"band must look like 1950-1999:50, got {text!r}") from None


def parse_bands(text: str) -> list[Band]:
    """Comma-separated band list, e.g. ``1950-1999:50,2000-2014:150``."""
    bands = [parse_band(part) for part in text.split(",") if part.strip()]
    _check_bands(bands)
    return bands


def _as_band(band: Band | Mapping | Sequence) -> Band:
    if isinstance(band, Band):
        return band
    if isinstance(band, Mapping):
        return Band(int(band["rpy_lo"]), int(band["rpy_hi"]), int(band["min_n_cr"]))
    lo, hi, min_n = band
    return Band(int(lo), int(hi), int(min_n))


def _check_bands(bands: Sequence[Band]) -> None:
    ordered = sorted(bands, key=lambda b: b.rpy_lo)
    for prev, nxt in zip(ordered, ordered[1:]):
        if nxt.rpy_lo <= prev.rpy_hi:
            raise ValueError(
                f"bands overlap: {prev.rpy_lo}-{prev.rpy_hi} and {nxt.rpy_lo}-{nxt.rpy_hi}"
            )


def select_key_refs(table: CRTable, bands: Iterable[Band | Mapping | Sequence]) -> list[CRRow]:
    """Rows whose rpy falls in a band and whose count meets that band's
    minimum (inclusive); sorted by (rpy, -n_cr)."""
    parsed = [_as_band(b) for b in bands]
    _check_bands(parsed)
    selected = []
    for row in table.rows:
        for band in parsed:
            if band.rpy_lo <= row.rpy <= band.rpy_hi and row.n_cr >= band.min_n_cr:
                selected.append(replace(row, selected=True))
                break
    selected.sort(key=lambda r: (r.rpy, -r.n_cr, r.canonical.raw))
    return selected


def n_top10(table: CRTable, corpus: Corpus) -> CRTable:
    """Fill the top-decile indicator for every row.

    For each citing publication year t, the references sharing a focal
    reference's rpy and cited at least once in t are ranked by their count
    in t; the focal reference scores year t when its count reaches the
    ceil(n/10)-th largest count (ties at the threshold score too). The
    indicator is the number of scoring years, ranked against the full
    merged population, not just the filtered table rows.
    """
    totals, by_year = _canonical_counts(corpus, table.mapping)
    rpy_of: dict[str, int | None] = {raw: parse_cited_ref(raw).rpy for raw in totals}

    # rpy -> citing year -> sorted descending counts of that year's slice
    slices: dict[int, dict[int, list[int]]] = {}
    for raw, years in by_year.items():
        rpy = rpy_of[raw]
        if rpy is None:
            continue
        per_year = slices.setdefault(rpy, {})
        for year, count in years.items():
            per_year.setdefault(year, []).append(count)
    thresholds: dict[int, dict[int, int]] = {}
    for rpy, per_year in slices.items():
        thresholds[rpy] = {}
        for year, counts in per_year.items():
            counts.sort(reverse=True)
            k = max(1, -(-len(counts) // 10))  # ceil(n/10)
            thresholds[rpy][year] = counts[k - 1]

    rows = []
    for row in table.rows:
        years = by_year.get(row.canonical.raw, {})
        score = sum(1 for year, count in years.items() if count >= thresholds[row.rpy][year])
        rows.append(replace(row, n_top10=score))
    return CRTable(rows=tuple(rows), provenance=dict(table.provenance), mapping=table.mapping)


def fraction_text(value: Fraction) -> str:
    """Exact decimal text for dyadic rationals (integers or .5 halves)."""
    if value.denominator == 1:
        return str(value.numerator)
    if value.denominator == 2:
        whole = abs(value.numerator) // 2
        sign = "-" if value.numerator < 0 else ""
        return f"{sign}{whole}.5"
    return str(float(value))


def export_cr_table(table: CRTable, out: IO[str] | None = None, bands: Iterable | None = None) -> str:
    """CR table CSV: CR,RPY,N_CR,N_TOP10,SELECTED,DOI (RFC-4180, UTF-8)."""
    rows = table.rows
    if bands is not None:
        selected_raws = {row.canonical.raw for row in select_key_refs(table, bands)}
        rows = tuple(replace(row, selected=row.canonical.raw in selected_raws) for row in rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["CR", "RPY", "N_CR", "N_TOP10", "SELECTED", "DOI"])
    for row in sorted(rows, key=lambda r: (r.rpy, -r.n_cr, r.canonical.raw)):
        writer.writerow(
            [
                row.canonical.raw,
                row.rpy,
                row.n_cr,
                "" if row.n_top10 is None else row.n_top10,
                "true" if row.selected else "false",
                row.canonical.doi or "",
            ]
        )
    text = buffer.getvalue()
    if out is not None:
        out.write(text)
    return text


def export_spectrum(points: Iterable[SpectrumPoint], out: IO[str] | None = None) -> str:
    """Spectrum CSV: RPY,N_CR_TOTAL,MEDIAN_5,DEVIATION."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["RPY", "N_CR_TOTAL", "MEDIAN_5", "DEVIATION"])
    for point in points:
        writer.writerow([point.rpy, point.n_cr_total, fraction_text(point.median5), fraction_text(point.deviation)])
    text = buffer.getvalue()
    if out is not None:
        out.write(text)
    return text
