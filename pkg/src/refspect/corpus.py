"""In-memory corpus with token indexes and named record sets.

Search semantics live here so both the query engine and the service share
one implementation:

* Tokens are lowercase runs matching ``[0-9a-z]+(?:-[0-9a-z]+)*`` — internal
  hyphens keep a hyphenated word as one token ("heat-wave").
* TITLE searches the title's token sequence only.
* TOPIC searches title, abstract, each author keyword, and each keywords-plus
  entry. Every keyword is its own sequence, so a phrase can never straddle
  two keywords, nor a keyword and the title.
* A term matches whole tokens; a trailing ``*`` matches token prefixes;
  a quoted phrase matches contiguous tokens within one sequence.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .records import CitingRecord

_TOKEN_RE = re.compile(r"[0-9a-z]+(?:-[0-9a-z]+)*")

#: Query field name -> index domain.
FIELD_DOMAINS = {"TS": "TOPIC", "TOPIC": "TOPIC", "TI": "TITLE", "TITLE": "TITLE"}

#: Facet name -> record attribute, for refine operations.
FACET_ATTRS = {
    "doc_type": "doc_types",
    "subject_category": "subject_categories",
    "country": "countries",
}


def tokenize(text: str) -> tuple[str, ...]:
    return tuple(_TOKEN_RE.findall(text.lower()))


@dataclass(frozen=True)
class RecordSet:
    """A named, reproducible set of record ids.

    ``query`` is the exact text whose evaluation produced the set, so any
    saved set can be replayed against a corpus and checked.
    """

    name: str
    query: str
    ids: frozenset[str]

    @property
    def count(self) -> int:
        return len(self.ids)

    def to_json(self) -> dict:
        return {"name": self.name, "query": self.query, "ids": sorted(self.ids)}

    @classmethod
    def from_json(cls, payload: dict) -> "RecordSet":
        return cls(name=payload["name"], query=payload["query"], ids=frozenset(payload["ids"]))


class Corpus:
    """Immutable collection of citing records plus search indexes."""

    def __init__(self, records: Iterable[CitingRecord]):
        self.records: tuple[CitingRecord, ...] = tuple(records)
        self.by_id: dict[str, CitingRecord] = {}
        for rec in self.records:
            if rec.record_id in self.by_id:
                raise ValueError(f"duplicate record id {rec.record_id!r}")
            self.by_id[rec.record_id] = rec
        self.all_ids: frozenset[str] = frozenset(self.by_id)

        # domain -> record id -> tuple of token sequences
        self._sequences: dict[str, dict[str, tuple[tuple[str, ...], ...]]] = {"TITLE": {}, "TOPIC": {}}
        # domain -> token -> record id set
        self._postings: dict[str, dict[str, set[str]]] = {"TITLE": {}, "TOPIC": {}}
        for rec in self.records:
            title_seq = tokenize(rec.title)
            topic_seqs = [title_seq, tokenize(rec.abstract)]
            topic_seqs.extend(tokenize(kw) for kw in sorted(rec.keywords_author))
            topic_seqs.extend(tokenize(kw) for kw in sorted(rec.keywords_plus))
            self._sequences["TITLE"][rec.record_id] = (title_seq,)
            self._sequences["TOPIC"][rec.record_id] = tuple(topic_seqs)
            for domain in ("TITLE", "TOPIC"):
                for seq in self._sequences[domain][rec.record_id]:
                    for token in seq:
                        self._postings[domain].setdefault(token, set()).add(rec.record_id)
        # sorted vocabulary per domain, for wildcard prefix ranges
        self._vocab: dict[str, list[str]] = {d: sorted(p) for d, p in self._postings.items()}

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[CitingRecord]:
        return iter(self.records)

    # -- primitive matchers ------------------------------------------------

    def match_term(self, field_name: str, term: str) -> frozenset[str]:
        domain = FIELD_DOMAINS[field_name.upper()]
        tokens = tokenize(term)
        if len(tokens) != 1:
            # a term that tokenizes to several tokens behaves as a phrase
            return self.match_phrase(field_name, term)
        return frozenset(self._postings[domain].get(tokens[0], ()))

    def match_prefix(self, field_name: str, prefix: str) -> frozenset[str]:
        domain = FIELD_DOMAINS[field_name.upper()]
        tokens = tokenize(prefix)
        if len(tokens) != 1:
            raise ValueError(f"wildcard stem must be a single token: {prefix!r}")
        stem = tokens[0]
        vocab = self._vocab[domain]
        lo = bisect_left(vocab, stem)
        hits: set[str] = set()
        for i in range(lo, len(vocab)):
            if not vocab[i].startswith(stem):
                break
            hits |= self._postings[domain][vocab[i]]
        return frozenset(hits)

    def match_phrase(self, field_name: str, phrase: str) -> frozenset[str]:
        domain = FIELD_DOMAINS[field_name.upper()]
        tokens = tokenize(phrase)
        if not tokens:
            return frozenset()
        if len(tokens) == 1:
            return frozenset(self._postings[domain].get(tokens[0], ()))
        candidates = self._postings[domain].get(tokens[0], set())
        hits: set[str] = set()
        for rid in candidates:
            for seq in self._sequences[domain][rid]:
                if _contains_run(seq, tokens):
                    hits.add(rid)
                    break
        return frozenset(hits)

    # -- facets ------------------------------------------------------------

    def facet_values(self, record_id: str, facet: str) -> frozenset:
        rec = self.by_id[record_id]
        if facet == "pub_year":
            return frozenset({rec.pub_year})
        attr = FACET_ATTRS.get(facet)
        if attr is None:
            raise ValueError(f"unknown facet {facet!r}")
        return getattr(rec, attr)

    def refine(self, ids: frozenset[str], facet: str, values: Iterable, excluding: bool = False) -> frozenset[str]:
        """Filter ids by a facet.

        Include mode keeps records having ANY listed value. Exclude mode
        drops records having ANY listed value, except for subject_category
        where a record survives as long as at least one of its categories is
        NOT excluded (a record whose every category is excluded is dropped).
        """
        if facet == "pub_year":
            wanted = {int(v) for v in values}
        else:
            wanted = {str(v).upper() for v in values}
        kept = set()
        for rid in ids:
            have = self.facet_values(rid, facet)
            if facet != "pub_year":
                have = {str(v).upper() for v in have}
            if not excluding:
                if have & wanted:
                    kept.add(rid)
            elif facet == "subject_category":
                if have - wanted:
                    kept.add(rid)
            else:
                if not (have & wanted):
                    kept.add(rid)
        return frozenset(kept)

    def restrict_timespan(self, ids: frozenset[str], first_year: int, last_year: int) -> frozenset[str]:
        return frozenset(rid for rid in ids if first_year <= self.by_id[rid].pub_year <= last_year)

    # -- cited references ----------------------------------------------------

    def cited_refs(self, ids: Iterable[str] | None = None) -> Iterator[tuple[str, str]]:
        """Yield (record_id, raw cited ref) pairs, input record order."""
        if ids is None:
            pool = self.records
        else:
            wanted = set(ids)
            pool = (r for r in self.records if r.record_id in wanted)
        for rec in pool:
            for raw in rec.cited_refs:
                yield rec.record_id, raw


def _contains_run(seq: tuple[str, ...], run: tuple[str, ...]) -> bool:
    n, k = len(seq), len(run)
    first = run[0]
    for i in range(n - k + 1):
        if seq[i] == first and seq[i : i + k] == run:
            return True
    return False
