"""Core record types shared across the workbench.

A corpus is a list of :class:`CitingRecord` parsed from an export file; each
record carries the raw cited-reference strings that later stages parse,
deduplicate, and count. All collection-valued fields use immutable containers
so records are hashable and structurally comparable in round-trip tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PUB_YEAR_MIN = 1900
PUB_YEAR_MAX = 2100


@dataclass(frozen=True)
class CitingRecord:
    """One publication of the analyzed corpus."""

    record_id: str
    pub_year: int
    doc_types: frozenset[str] = field(default_factory=frozenset)
    title: str = ""
    abstract: str = ""
    authors: tuple[str, ...] = ()
    countries: frozenset[str] = field(default_factory=frozenset)
    keywords_author: frozenset[str] = field(default_factory=frozenset)
    keywords_plus: frozenset[str] = field(default_factory=frozenset)
    subject_categories: frozenset[str] = field(default_factory=frozenset)
    cited_refs: tuple[str, ...] = ()
    doi: str | None = None

    def to_json(self) -> dict:
        """JSON-serializable dict with set fields sorted for stable output."""
        return {
            "record_id": self.record_id,
            "pub_year": self.pub_year,
            "doc_types": sorted(self.doc_types),
            "title": self.title,
            "abstract": self.abstract,
            "authors": list(self.authors),
            "countries": sorted(self.countries),
            "keywords_author": sorted(self.keywords_author),
            "keywords_plus": sorted(self.keywords_plus),
            "subject_categories": sorted(self.subject_categories),
            "cited_refs": list(self.cited_refs),
            "doi": self.doi,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CitingRecord":
        return cls(
            record_id=data["record_id"],
            pub_year=data["pub_year"],
            doc_types=frozenset(data.get("doc_types", ())),
            title=data.get("title", ""),
            abstract=data.get("abstract", ""),
            authors=tuple(data.get("authors", ())),
            countries=frozenset(data.get("countries", ())),
            keywords_author=frozenset(data.get("keywords_author", ())),
            keywords_plus=frozenset(data.get("keywords_plus", ())),
            subject_categories=frozenset(data.get("subject_categories", ())),
            cited_refs=tuple(data.get("cited_refs", ())),
            doi=data.get("doi"),
        )


@dataclass(frozen=True)
class CitedRefFields:
    """A cited-reference string split into its conventional segments.

    ``raw`` is preserved byte-for-byte; every other field is best-effort and
    absent (``None``) when the pattern is missing.
    """

    raw: str
    first_author: str | None = None
    rpy: int | None = None
    source: str | None = None
    volume: str | None = None
    page: str | None = None
    doi: str | None = None


@dataclass(frozen=True)
class IngestWarning:
    """A non-fatal problem encountered while parsing an export file."""

    message: str
    record_id: str | None = None
    line_no: int | None = None

    def __str__(self) -> str:
        where = f" (record {self.record_id})" if self.record_id else ""
        at = f" at line {self.line_no}" if self.line_no is not None else ""
        return f"{self.message}{where}{at}"
