"""Export-file ingestion.

Two interchange formats are supported, both UTF-8 (an optional BOM is
tolerated and skipped):

tagged_text
    A header line starting with ``FN`` (an optional ``VR`` line may follow),
    then records separated by an ``ER`` line; an optional trailing ``EF``
    closes the file. Field lines are ``XX value`` with two-letter tags;
    continuation lines begin with exactly three spaces. For ``CR`` each
    continuation line is a separate cited reference; for every other tag
    continuations are joined with a single space.

tab_delimited
    First row is a tab-separated header of the same two-letter tags, one
    record per row, multi-valued cells joined with ``; ``.

Tags:
    ``PT`` ignored, ``PY`` publication year, ``DT`` document types,
    ``TI`` title, ``AB`` abstract, ``AU`` authors, ``C1`` addresses,
    ``DE`` author keywords, ``ID`` keywords plus, ``WC`` subject categories,
    ``CR`` cited references, ``DI`` DOI, ``UT`` record id. Semicolons
    separate multi-valued fields.

Records without a parseable publication year inside [1900, 2100] are dropped
with a warning — every downstream statistic keys on the year. Ordering of
output records always follows input order, whatever the worker count.
"""

from __future__ import annotations

import io
import re
from concurrent.futures import ThreadPoolExecutor
from typing import BinaryIO, Iterable

from .records import PUB_YEAR_MAX, PUB_YEAR_MIN, CitingRecord, IngestWarning

TAGGED_TEXT = "tagged_text"
TAB_DELIMITED = "tab_delimited"
FORMATS = (TAGGED_TEXT, TAB_DELIMITED)

_TAG_RE = re.compile(r"^([A-Z][A-Z0-9]) (.*)$")
_HEADER_TAG_RE = re.compile(r"^[A-Z][A-Z0-9]$")
_WS_RE = re.compile(r"\s+")

# Countries that appear with a trailing US state/zip in address strings all
# collapse onto USA; UK home nations stay distinct on purpose.
_USA_SUFFIX_RE = re.compile(r"\bUSA$")
_COUNTRY_ALIASES = {
    "UNITED STATES": "USA",
    "UNITED STATES OF AMERICA": "USA",
    "PEOPLES REPUBLIC OF CHINA": "PEOPLES R CHINA",
}


class FormatError(ValueError):
    """The stream does not look like the requested export format."""


def normalize_keyword(raw: str) -> str:
    """Lower-case, trim, and collapse internal whitespace.

    Hyphens are preserved: hyphenated and spaced spellings of the same
    concept are deliberately kept distinct tokens.
    """
    return _WS_RE.sub(" ", raw.strip()).lower()


def normalize_country(token: str) -> str:
    """Canonicalize the trailing country token of one address."""
    name = _WS_RE.sub(" ", token.strip().strip(".")).upper()
    if _USA_SUFFIX_RE.search(name):
        return "USA"
    return _COUNTRY_ALIASES.get(name, name)


def _split_addresses(c1_value: str) -> list[str]:
    """Split a C1 field on semicolons outside bracketed author groups."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in c1_value:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth = max(0, depth - 1)
        if ch == ";" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def extract_countries(addresses: Iterable[str]) -> frozenset[str]:
    """Country set from address strings: last comma token of each address."""
    countries = set()
    for addr in addresses:
        addr = re.sub(r"^\[[^\]]*\]\s*", "", addr)
        if not addr:
            continue
        token = addr.rsplit(",", 1)[-1]
        name = normalize_country(token)
        if name:
            countries.add(name)
    return frozenset(countries)


def _split_multi(value: str) -> list[str]:
    return [part.strip() for part in value.split(";") if part.strip()]


def _build_record(fields: dict[str, list[str]], ordinal: int) -> tuple[CitingRecord | None, list[IngestWarning]]:
    """Turn one raw tag→values mapping into a record, or drop it."""
    warnings: list[IngestWarning] = []

    def joined(tag: str) -> str:
        return " ".join(fields.get(tag, []))

    record_id = joined("UT").strip()
    if not record_id:
        record_id = f"REC-{ordinal:06d}"
        warnings.append(IngestWarning("missing UT tag; synthesized record id", record_id=record_id))

    py_raw = joined("PY").strip()
    try:
        pub_year = int(py_raw)
    except ValueError:
        warnings.append(IngestWarning(f"unparseable publication year {py_raw!r}; record dropped", record_id=record_id))
        return None, warnings
    if not PUB_YEAR_MIN <= pub_year <= PUB_YEAR_MAX:
        warnings.append(IngestWarning(f"publication year {pub_year} outside [{PUB_YEAR_MIN}, {PUB_YEAR_MAX}]; record dropped", record_id=record_id))
        return None, warnings

    record = CitingRecord(
        record_id=record_id,
        pub_year=pub_year,
        doc_types=frozenset(_split_multi(joined("DT"))),
        title=joined("TI").strip(),
        abstract=joined("AB").strip(),
        authors=tuple(_split_multi(joined("AU"))),
        countries=extract_countries(_split_addresses(joined("C1"))),
        keywords_author=frozenset(filter(None, (normalize_keyword(k) for k in _split_multi(joined("DE"))))),
        keywords_plus=frozenset(filter(None, (normalize_keyword(k) for k in _split_multi(joined("ID"))))),
        subject_categories=frozenset(_split_multi(joined("WC"))),
        cited_refs=tuple(v for v in fields.get("CR", []) if v.strip()),
        doi=joined("DI").strip() or None,
    )
    return record, warnings


def _decode(stream: BinaryIO | bytes | str) -> str:
    if isinstance(stream, str):
        return stream.lstrip("﻿")
    data = stream if isinstance(stream, bytes) else stream.read()
    if isinstance(data, str):
        return data.lstrip("﻿")
    return data.decode("utf-8-sig")


def _collect_tagged(text: str) -> tuple[list[dict[str, list[str]]], list[IngestWarning]]:
    """Group tagged-text lines into per-record tag→values mappings."""
    lines = text.splitlines()
    pos = 0
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines) or not lines[pos].startswith("FN"):
        raise FormatError("tagged_text stream must start with an FN header line")
    pos += 1
    if pos < len(lines) and lines[pos].startswith("VR"):
        pos += 1

    raw_records: list[dict[str, list[str]]] = []
    warnings: list[IngestWarning] = []
    fields: dict[str, list[str]] = {}
    last_tag: str | None = None
    open_record = False

    for line_no in range(pos, len(lines)):
        line = lines[line_no]
        if line.strip() == "ER":
            if open_record:
                raw_records.append(fields)
            fields, last_tag, open_record = {}, None, False
            continue
        if line.strip() == "EF":
            break
        if not line.strip():
            continue
        if line.startswith("   ") and last_tag is not None:
            value = line[3:]
            if last_tag == "CR":
                fields[last_tag].append(value)
            else:
                fields[last_tag][-1] = f"{fields[last_tag][-1]} {value.strip()}"
            open_record = True
            continue
        m = _TAG_RE.match(line)
        if m:
            tag, value = m.group(1), m.group(2)
            fields.setdefault(tag, []).append(value)
            last_tag = tag
            open_record = True
        else:
            warnings.append(IngestWarning(f"unrecognized line skipped: {line[:40]!r}", line_no=line_no + 1))

    if open_record:
        warnings.append(IngestWarning("truncated record at end of file dropped"))
    return raw_records, warnings


def _collect_tabbed(text: str) -> tuple[list[dict[str, list[str]]], list[IngestWarning]]:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise FormatError("tab_delimited stream is missing its header row")
    header = lines[0].rstrip("\n").split("\t")
    if any(not _HEADER_TAG_RE.match(tag.strip()) for tag in header):
        raise FormatError(f"tab_delimited header contains non-tag columns: {header!r}")
    if "PY" not in header:
        raise FormatError("tab_delimited header lacks the PY column")
    header = [tag.strip() for tag in header]

    raw_records = []
    warnings: list[IngestWarning] = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) > len(header):
            warnings.append(IngestWarning(f"row has {len(cells)} cells for {len(header)} columns; extras ignored", line_no=line_no))
        fields: dict[str, list[str]] = {}
        for tag, cell in zip(header, cells):
            if cell == "":
                continue
            if tag == "CR":
                fields[tag] = [part.strip() for part in cell.split("; ") if part.strip()]
            else:
                fields[tag] = [cell]
        raw_records.append(fields)
    return raw_records, warnings


def parse_export(
    stream: BinaryIO | bytes | str,
    format: str = TAGGED_TEXT,
    workers: int = 1,
) -> tuple[list[CitingRecord], list[IngestWarning]]:
    """Parse an export stream into records plus warnings.

    ``workers`` parallelizes the per-record field mapping; output order is
    the input record order regardless.
    """
    if format not in FORMATS:
        raise FormatError(f"unknown export format {format!r}; expected one of {FORMATS}")
    text = _decode(stream)
    if format == TAGGED_TEXT:
        raw_records, warnings = _collect_tagged(text)
    else:
        raw_records, warnings = _collect_tabbed(text)

    jobs = list(enumerate(raw_records, start=1))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            built = list(pool.map(lambda job: _build_record(job[1], job[0]), jobs))
    else:
        built = [_build_record(fields, ordinal) for ordinal, fields in jobs]

    records: list[CitingRecord] = []
    seen_ids: set[str] = set()
    for record, record_warnings in built:
        warnings.extend(record_warnings)
        if record is None:
            continue
        if record.record_id in seen_ids:
            warnings.append(IngestWarning("duplicate record id; later record dropped", record_id=record.record_id))
            continue
        seen_ids.add(record.record_id)
        records.append(record)
    return records, warnings


def parse_export_file(path: str, format: str = TAGGED_TEXT, workers: int = 1):
    with io.open(path, "rb") as fh:
        return parse_export(fh, format=format, workers=workers)
