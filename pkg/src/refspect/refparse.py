"""Cited-reference string parsing.

Export files carry each cited reference as one comma-separated line in the
conventional abbreviated form::

    MEEHL GA, 2004, SCIENCE, V305, P994, DOI 10.1126/science.1098704

Segments are positional only loosely; the parser keys on patterns instead:
the leading segment is the first-author name, the first all-digit 4-char
segment is the reference publication year (RPY), ``V``/``P``-prefixed
segments are volume and page, a ``DOI ``-prefixed segment is the DOI, and
the source title is whatever the second or third segment turns out to be
once years are accounted for. Parsing is total: anything unrecognized just
leaves fields absent.
"""

from __future__ import annotations

import re

from .records import CitedRefFields

_YEAR_SEG_RE = re.compile(r"^\d{4}$")
_VOLUME_SEG_RE = re.compile(r"^V(\d[\w./-]*)$")
_PAGE_SEG_RE = re.compile(r"^P(\d[\w./-]*)$")
_DOI_SEG_RE = re.compile(r"^DOI\s+(?:DOI\s+)?(\S.*)$", re.IGNORECASE)
_HAS_LETTER_RE = re.compile(r"[A-Za-z]")


def parse_cited_ref(raw: str) -> CitedRefFields:
    """Split one cited-reference string into :class:`CitedRefFields`.

    Never raises; the worst case is a result carrying only ``raw``.
    """
    segments = [seg.strip() for seg in raw.split(",")]

    first_author: str | None = None
    rpy: int | None = None
    source: str | None = None
    volume: str | None = None
    page: str | None = None
    doi: str | None = None

    claimed = [False] * len(segments)

    if segments and _HAS_LETTER_RE.search(segments[0]) and not _YEAR_SEG_RE.match(segments[0]):
        first_author = segments[0]
        claimed[0] = True

    for i, seg in enumerate(segments):
        if rpy is None and _YEAR_SEG_RE.match(seg):
            rpy = int(seg)
            claimed[i] = True
            continue
        m = _VOLUME_SEG_RE.match(seg)
        if m and volume is None:
            volume = m.group(1)
            claimed[i] = True
            continue
        m = _PAGE_SEG_RE.match(seg)
        if m and page is None:
            page = m.group(1)
            claimed[i] = True
            continue
        m = _DOI_SEG_RE.match(seg)
        if m and doi is None:
            doi = m.group(1).strip()
            claimed[i] = True

    # Source: first unclaimed segment in position 2 or 3 that carries text.
    for i in (1, 2):
        if i < len(segments) and not claimed[i] and _HAS_LETTER_RE.search(segments[i]):
            source = segments[i]
            break

    return CitedRefFields(
        raw=raw,
        first_author=first_author,
        rpy=rpy,
        source=source,
        volume=volume,
        page=page,
        doi=doi,
    )
