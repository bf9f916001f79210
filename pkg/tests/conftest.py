"""Shared fixtures: the bundled sample corpus, random corpus builders, and
the terminal summary that reprints one line per acceptance criterion."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from refspect.corpus import Corpus
from refspect.records import CitingRecord

FIXTURES = Path(__file__).parent / "fixtures"

_REF_SOURCES = (
    "CLIMATE RES",
    "INT J BIOMETEOROL",
    "ENVIRON HEALTH PERSP",
    "J APPL METEOROL",
    "LANCET",
    "EPIDEMIOLOGY",
)
_REF_NAMES = ("SMITH J", "ANDERSON P", "LEE K", "GARCIA M", "PATEL R", "WEBER H", "TANAKA Y", "COSTA L")


def load_golden_records() -> list[CitingRecord]:
    payload = json.loads((FIXTURES / "golden_records.json").read_text(encoding="utf-8"))
    return [CitingRecord.from_json(item) for item in payload["records"]]


@pytest.fixture(scope="session")
def sample_corpus() -> Corpus:
    return Corpus(load_golden_records())


@pytest.fixture(scope="session")
def planted() -> dict:
    return json.loads((FIXTURES / "planted.json").read_text(encoding="utf-8"))


def make_ref_pool(rng, n_refs: int, rpy_lo: int = 1950, rpy_hi: int = 2020):
    """Reference strings with construction-known publication years."""
    pool = []
    ref_rpy = {}
    for i in range(n_refs):
        rpy = rng.randint(rpy_lo, rpy_hi)
        raw = (
            f"{rng.choice(_REF_NAMES)}{i}, {rpy}, {rng.choice(_REF_SOURCES)},"
            f" V{rng.randint(1, 80)}, P{rng.randint(1, 999)}"
        )
        pool.append(raw)
        ref_rpy[raw] = rpy
    return pool, ref_rpy


def make_citing_corpus(rng, n_records: int, ref_pool, max_refs: int = 25, year_lo: int = 1990, year_hi: int = 2020) -> Corpus:
    """Random citing records; repeats within one reference list are deliberate."""
    records = []
    for i in range(n_records):
        refs = tuple(rng.choice(ref_pool) for _ in range(rng.randint(0, max_refs)))
        records.append(
            CitingRecord(
                record_id=f"R{i:05d}",
                pub_year=rng.randint(year_lo, year_hi),
                cited_refs=refs,
            )
        )
    return Corpus(records)


def make_keyword_corpus(rng, n_records: int, vocab_size: int = 30, max_kw: int = 8) -> Corpus:
    vocab = [f"topic {i:02d}" if i % 3 == 0 else f"term-{i:02d}" for i in range(vocab_size)]
    records = []
    for i in range(n_records):
        kws = rng.sample(vocab, rng.randint(0, min(max_kw, vocab_size)))
        records.append(
            CitingRecord(
                record_id=f"K{i:05d}",
                pub_year=rng.randint(2000, 2020),
                keywords_plus=frozenset(kws),
            )
        )
    return Corpus(records)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None) if module else None
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in results:
        terminalreporter.write_line(f"{status}: {name}")
