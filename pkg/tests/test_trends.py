from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import percent_1dp
from refspect.corpus import Corpus, RecordSet
from refspect.records import CitingRecord
from refspect.trends import (
    AnnualSeries,
    TrendError,
    annual_counts,
    country_table,
    doubling_time,
    export_country_table,
    export_series,
    export_series_long,
    growth_factor,
    percent_half_up,
    percent_text,
    pooled_share,
    round1_half_up,
    share_series,
)


def _corpus(year_by_id: dict[str, int], countries: dict[str, tuple] | None = None):
    countries = countries or {}
    return Corpus(
        CitingRecord(record_id=rid, pub_year=year, countries=countries.get(rid, ()))
        for rid, year in year_by_id.items()
    )


@pytest.fixture
def trend_corpus():
    years = {"a": 2000, "b": 2000, "c": 2001, "d": 2003, "e": 2003, "f": 2003}
    return _corpus(years)


def test_annual_counts_zero_fills_the_corpus_range(trend_corpus):
    series = annual_counts(RecordSet("all", "q", frozenset("abcdef")), trend_corpus)
    assert series.counts == {2000: 2, 2001: 1, 2002: 0, 2003: 3}
    assert series.years == [2000, 2001, 2002, 2003]
    assert series.total() == 6


def test_annual_counts_subset_still_spans_corpus_years(trend_corpus):
    series = annual_counts(RecordSet("some", "q", frozenset({"c"})), trend_corpus)
    assert series.counts == {2000: 0, 2001: 1, 2002: 0, 2003: 0}


def test_series_label_prefers_name_over_query(trend_corpus):
    named = annual_counts(RecordSet("picked", "heat AND city", frozenset()), trend_corpus)
    assert named.label == "picked"
    anonymous = annual_counts(RecordSet("", "heat AND city", frozenset()), trend_corpus)
    assert anonymous.label == "heat AND city"


def test_annual_counts_on_empty_corpus():
    series = annual_counts(RecordSet("n", "q", frozenset()), Corpus([]))
    assert series.counts == {}


def test_growth_factor_is_exact():
    series = AnnualSeries("s", {2000: 7, 2001: 0, 2002: 22})
    assert growth_factor(series, 2000, 2002) == Fraction(22, 7)
    assert growth_factor(series, 2002, 2000) == Fraction(7, 22)
    with pytest.raises(TrendError):
        growth_factor(series, 1999, 2002)
    with pytest.raises(TrendError):
        growth_factor(series, 2001, 2002)


def test_doubling_time_on_exact_doubling():
    series = AnnualSeries("s", {2000: 100, 2007: 200})
    assert doubling_time(series, (2000, 2007)) == 7.0


def test_doubling_time_on_quadrupling():
    series = AnnualSeries("s", {2000: 100, 2010: 400})
    assert doubling_time(series, (2000, 2010)) == pytest.approx(5.0, rel=1e-12)


def test_doubling_time_error_cases():
    series = AnnualSeries("s", {2000: 100, 2001: 100, 2002: 50, 2003: 0})
    for window in ((1990, 2000), (2000, 2001), (2000, 2002), (2003, 2001)):
        with pytest.raises(TrendError):
            doubling_time(series, window)


def test_share_series_none_when_denominator_empty(trend_corpus):
    num = RecordSet("n", "q", frozenset({"a", "d"}))
    den = RecordSet("d", "q", frozenset({"a", "b", "d", "e", "f"}))
    shares = share_series(num, den, trend_corpus)
    assert shares == {
        2000: Fraction(100, 2),
        2001: None,
        2002: None,
        2003: Fraction(100, 3),
    }


def test_pooled_share_is_one_quotient(trend_corpus):
    num = RecordSet("n", "q", frozenset({"a", "d"}))
    den = RecordSet("d", "q", frozenset({"a", "b", "d", "e", "f"}))
    assert pooled_share(num, den, trend_corpus, 2000, 2003) == Fraction(200, 5)
    assert pooled_share(num, den, trend_corpus, 2001, 2001) is None


def test_published_percent_values():
    assert percent_half_up(2081, 8011) == 26.0
    assert percent_half_up(1026, 8011) == 12.8


def test_half_up_rounding_at_the_boundary():
    # 1/16 is exactly 6.25%, the half rounds up
    assert round1_half_up(1, 16) == 63
    assert round1_half_up(3, 16) == 188
    assert percent_text(1, 16) == "6.3"
    # exact tenths stay put
    assert round1_half_up(1, 8) == 125
    assert percent_text(1, 8) == "12.5"
    assert round1_half_up(0, 5) == 0
    assert percent_text(0, 5) == "0.0"
    with pytest.raises(TrendError):
        round1_half_up(1, 0)


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_percent_matches_oracle(n, d):
    assert percent_half_up(n, d) == percent_1dp(n, d)


def test_country_table_full_counting_and_order():
    corpus = _corpus(
        {"a": 2000, "b": 2001, "c": 2002, "d": 2003},
        countries={
            "a": ("USA", "GERMANY"),
            "b": ("USA",),
            "c": ("GERMANY",),
            "d": ("FRANCE",),
        },
    )
    rows = country_table(corpus)
    assert [(r.country, r.n_papers) for r in rows] == [
        ("GERMANY", 2),
        ("USA", 2),
        ("FRANCE", 1),
    ]
    assert rows[0].pct_of_corpus == 50.0
    assert rows[2].pct_of_corpus == 25.0
    assert all(r.pct_of_reference is None for r in rows)


def test_country_table_min_papers_and_reference():
    corpus = _corpus({"a": 2000, "b": 2001}, countries={"a": ("USA",), "b": ("USA", "CHILE")})
    reference = _corpus(
        {"r1": 2000, "r2": 2000, "r3": 2001, "r4": 2002},
        countries={"r1": ("USA",), "r2": ("USA",), "r3": ("USA",), "r4": ("PERU",)},
    )
    rows = country_table(corpus, reference_corpus=reference, min_papers=2)
    assert [(r.country, r.n_papers, r.pct_of_corpus, r.pct_of_reference) for r in rows] == [
        ("USA", 2, 100.0, 75.0)
    ]
    with pytest.raises(TrendError):
        country_table(corpus, min_papers=-1)


def test_export_series_csv():
    series = AnnualSeries("s", {2000: 2, 2001: 0, 2002: 5})
    assert export_series(series) == "year,count\n2000,2\n2001,0\n2002,5\n"


def test_export_series_long_csv():
    first = AnnualSeries("heat", {2000: 1})
    second = AnnualSeries("cold, damp", {2000: 3})
    assert export_series_long([first, second]) == (
        "label,year,count\nheat,2000,1\n\"cold, damp\",2000,3\n"
    )


def test_export_country_table_csv():
    corpus = _corpus(
        {"a": 2000, "b": 2001, "c": 2002},
        countries={"a": ("USA",), "b": ("USA",), "c": ("GERMANY",)},
    )
    reference = _corpus({"r1": 2000, "r2": 2001}, countries={"r1": ("USA",), "r2": ()})
    rows = country_table(corpus, reference_corpus=reference)
    text = export_country_table(rows, corpus_size=3, reference_size=2)
    assert text == (
        "country,n_papers,pct_corpus,pct_reference\n"
        "USA,2,66.7,50.0\n"
        "GERMANY,1,33.3,0.0\n"
    )


def test_export_series_writes_to_stream(tmp_path):
    series = AnnualSeries("s", {2000: 1})
    path = tmp_path / "series.csv"
    with open(path, "w") as handle:
        returned = export_series(series, out=handle)
    assert path.read_text() == returned
