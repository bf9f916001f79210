"""Publication trend analytics: annual series, growth and doubling rates,
subset shares, and the country output table.

Percentages destined for presentation round half-up to one decimal through
integer arithmetic; everything else stays exact (Fraction) or is an honest
float (doubling time).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Mapping

from .corpus import Corpus, RecordSet


@dataclass(frozen=True)
class AnnualSeries:
    """Counts per year over a contiguous, zero-filled range."""

    label: str
    counts: dict  # year -> count, contiguous keys ascending

    def __getitem__(self, year: int) -> int:
        return self.counts[year]

    @property
    def years(self) -> list[int]:
        return list(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class CountryRow:
    country: str
    n_papers: int
    pct_of_corpus: float
    pct_of_reference: float | None = None


class TrendError(ValueError):
    pass


def annual_counts(record_set: RecordSet, corpus: Corpus) -> AnnualSeries:
    """Member records per publication year, zero-filled across the corpus
    year range."""
    if not corpus.records:
        return AnnualSeries(label=record_set.name or record_set.query, counts={})
    lo = min(rec.pub_year for rec in corpus.records)
    hi = max(rec.pub_year for rec in corpus.records)
    counts = {year: 0 for year in range(lo, hi + 1)}
    for rid in record_set.ids:
        counts[corpus.by_id[rid].pub_year] += 1
    return AnnualSeries(label=record_set.name or record_set.query, counts=counts)


def growth_factor(series: AnnualSeries, y0: int, y1: int) -> Fraction:
    """series[y1] / series[y0], exact."""
    if y0 not in series.counts or y1 not in series.counts:
        raise TrendError(f"years {y0}/{y1} outside the series range")
    base = series[y0]
    if base == 0:
        raise TrendError(f"growth from {y0} is undefined: count is zero")
    return Fraction(series[y1], base)


def doubling_time(series: AnnualSeries, window: tuple[int, int]) -> float:
    """Exponential-fit-through-endpoints doubling time in years."""
    ya, yb = window
    if ya not in series.counts or yb not in series.counts:
        raise TrendError(f"window {ya}-{yb} outside the series range")
    if series[ya] <= 0:
        raise TrendError(f"doubling time needs a positive count in {ya}")
    if series[yb] <= series[ya]:
        raise TrendError(f"no growth between {ya} and {yb}")
    ratio = series[yb] / series[ya]
    return (yb - ya) * math.log(2) / math.log(ratio)


def share_series(numerator: RecordSet, denominator: RecordSet, corpus: Corpus) -> dict:
    """Per-year percentage 100*|num∩year| / |den∩year|.

    Years where the denominator has no records map to None (undefined), not
    to zero. Values are exact Fractions.
    """
    num = annual_counts(numerator, corpus)
    den = annual_counts(denominator, corpus)
    shares: dict[int, Fraction | None] = {}
    for year in den.years:
        d = den[year]
        shares[year] = None if d == 0 else Fraction(100 * num[year], d)
    return shares


def pooled_share(numerator: RecordSet, denominator: RecordSet, corpus: Corpus, first_year: int, last_year: int) -> Fraction | None:
    """Share over a pooled year window (one quotient, not a mean of yearly
    shares)."""
    num = annual_counts(numerator, corpus)
    den = annual_counts(denominator, corpus)
    n = sum(num.counts.get(y, 0) for y in range(first_year, last_year + 1))
    d = sum(den.counts.get(y, 0) for y in range(first_year, last_year + 1))
    return None if d == 0 else Fraction(100 * n, d)


def round1_half_up(numerator: int, denominator: int) -> int:
    """100*numerator/denominator in tenths of a percent, half-up."""
    if denominator <= 0:
        raise TrendError(f"denominator must be positive, got {denominator}")
    return (2000 * numerator + denominator) // (2 * denominator)


def percent_half_up(numerator: int, denominator: int) -> float:
    """Percentage rounded half-up to one decimal (e.g. 2081/8011 -> 26.0)."""
    return round1_half_up(numerator, denominator) / 10


def percent_text(numerator: int, denominator: int) -> str:
    tenths = round1_half_up(numerator, denominator)
    return f"{tenths // 10}.{tenths % 10}"


def country_table(
    corpus: Corpus,
    reference_corpus: Corpus | None = None,
    min_papers: int = 0,
) -> list[CountryRow]:
    """Per-country paper counts with corpus percentages, full counting.

    Rows sort by paper count descending, ties alphabetically; countries
    with fewer than ``min_papers`` papers are omitted. Reference
    percentages (share of the reference corpus) are filled when a
    reference corpus is given.
    """
    if min_papers < 0:
        raise TrendError(f"min_papers must be >= 0, got {min_papers}")
    counts: dict[str, int] = {}
    for rec in corpus.records:
        for country in rec.countries:
            counts[country] = counts.get(country, 0) + 1
    ref_counts: dict[str, int] = {}
    if reference_corpus is not None:
        for rec in reference_corpus.records:
            for country in rec.countries:
                ref_counts[country] = ref_counts.get(country, 0) + 1
    total = len(corpus.records)
    ref_total = len(reference_corpus.records) if reference_corpus is not None else 0
    rows = []
    for country in sorted(counts):
        n = counts[country]
        if n < min_papers:
            continue
        pct_ref = None
        if reference_corpus is not None and ref_total > 0:
            pct_ref = percent_half_up(ref_counts.get(country, 0), ref_total)
        rows.append(
            CountryRow(
                country=country,
                n_papers=n,
                pct_of_corpus=percent_half_up(n, total) if total else 0.0,
                pct_of_reference=pct_ref,
            )
        )
    rows.sort(key=lambda r: (-r.n_papers, r.country))
    return rows


# -- CSV exports -------------------------------------------------------------

def export_series(series: AnnualSeries, out: IO[str] | None = None) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["year", "count"])
    for year in series.years:
        writer.writerow([year, series[year]])
    text = buffer.getvalue()
    if out is not None:
        out.write(text)
    return text


def export_series_long(series_list: Iterable[AnnualSeries], out: IO[str] | None = None) -> str:
    """Long-format CSV (label,year,count) for external charting."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["label", "year", "count"])
    for series in series_list:
        for year in series.years:
            writer.writerow([series.label, year, series[year]])
    text = buffer.getvalue()
    if out is not None:
        out.write(text)
    return text


def export_country_table(rows: Iterable[CountryRow], corpus_size: int, reference_size: int = 0, out: IO[str] | None = None) -> str:
    """CSV country,n_papers,pct_corpus,pct_reference with exact half-up
    one-decimal text."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["country", "n_papers", "pct_corpus", "pct_reference"])
    for row in rows:
        pct = percent_text(row.n_papers, corpus_size) if corpus_size else ""
        if row.pct_of_reference is None:
            ref = ""
        else:
            ref = f"{row.pct_of_reference:.1f}"
        writer.writerow([row.country, row.n_papers, pct, ref])
    text = buffer.getvalue()
    if out is not None:
        out.write(text)
    return text
