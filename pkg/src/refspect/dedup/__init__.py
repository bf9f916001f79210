"""Cited-reference variant clustering and curator-controlled merging.

Variants of the same reference (misspellings, formatting differences) are
linked when they share a reference publication year and their author+source
strings are similar enough; connected components of the link graph become
clusters for a curator to accept, reject, or edit. Accepted decisions build
a MergeMap that rewrites variant strings onto canonical ones.

Suggestions never change counts by themselves; only an applied MergeMap
does. Clusters never span publication years: the per-year spectrum must
stay conservation-safe under any merge.
"""

from __future__ import annotations

import datetime as _dt
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..records import CitedRefFields
from ..refparse import parse_cited_ref
from .backend import BACKEND, levenshtein, link_limit, pairwise_links, similarity

DEFAULT_THRESHOLD = 0.75

_STRIP_RE = re.compile(r"[^0-9a-z ]+")
_WS_RE = re.compile(r"\s+")


def normalize_compare_key(fields: CitedRefFields) -> str:
    """Comparison key: case-folded author + source with punctuation stripped."""
    text = f"{fields.first_author or ''} {fields.source or ''}".lower()
    return _WS_RE.sub(" ", _STRIP_RE.sub("", text)).strip()


@dataclass(frozen=True)
class ClusterMember:
    fields: CitedRefFields
    count: int


@dataclass(frozen=True)
class RefCluster:
    """A connected component of linked variants.

    ``size`` counts occurrences, not distinct variants: one variant cited
    twice already forms a size-2 cluster. ``suggested_canonical`` indexes
    the highest-count member (ties broken by smallest raw string).
    """

    cluster_id: int
    members: tuple[ClusterMember, ...]
    suggested_canonical: int
    status: str = "pending"  # pending | accepted | rejected | edited

    @property
    def size(self) -> int:
        return sum(m.count for m in self.members)

    @property
    def rpy(self) -> int | None:
        return self.members[0].fields.rpy

    def to_json(self) -> dict:
        return {
            "cluster_id": self.cluster_id,
            "rpy": self.rpy,
            "size": self.size,
            "suggested_canonical": self.suggested_canonical,
            "status": self.status,
            "members": [{"raw": m.fields.raw, "count": m.count} for m in self.members],
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _as_fields(ref: CitedRefFields | str) -> CitedRefFields:
    return ref if isinstance(ref, CitedRefFields) else parse_cited_ref(ref)


def suggest_clusters(
    refs: Iterable[CitedRefFields | str],
    threshold: float = DEFAULT_THRESHOLD,
    use_volume_page: bool = False,
) -> list[RefCluster]:
    """Cluster reference occurrences into merge suggestions.

    Two variants link when their rpy matches and the author+source
    similarity reaches ``threshold``. With ``use_volume_page``, variants
    whose volume or page differ (both sides present) never link, while
    variants agreeing on (rpy, volume, page, doi-or-source) link no matter
    how dissimilar their author strings are. Variants without an rpy stay
    unclustered. Output is deterministic under input permutation.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")

    counts: Counter[str] = Counter()
    parsed: dict[str, CitedRefFields] = {}
    for ref in refs:
        fields = _as_fields(ref)
        counts[fields.raw] += 1
        parsed.setdefault(fields.raw, fields)

    by_rpy: dict[int, list[str]] = {}
    for raw in sorted(parsed):
        rpy = parsed[raw].rpy
        if rpy is not None:
            by_rpy.setdefault(rpy, []).append(raw)

    clusters: list[tuple[str, list[str]]] = []  # (smallest raw, member raws)
    for rpy in sorted(by_rpy):
        raws = by_rpy[rpy]
        variants = [parsed[raw] for raw in raws]
        keys = [normalize_compare_key(v) for v in variants]
        uf = _UnionFind(len(raws))

        for i, j in pairwise_links(keys, threshold):
            if use_volume_page and not _volume_page_compatible(variants[i], variants[j]):
                continue
            uf.union(i, j)
        if use_volume_page:
            strong: dict[tuple, int] = {}
            for idx, v in enumerate(variants):
                if v.volume is None or v.page is None:
                    continue
                anchor = v.doi if v.doi is not None else v.source
                if anchor is None:
                    continue
                key = (v.volume, v.page, "doi" if v.doi is not None else "src", anchor)
                if key in strong:
                    uf.union(strong[key], idx)
                else:
                    strong[key] = idx

        components: dict[int, list[str]] = {}
        for idx, raw in enumerate(raws):
            components.setdefault(uf.find(idx), []).append(raw)
        for member_raws in components.values():
            if sum(counts[raw] for raw in member_raws) >= 2:
                clusters.append((member_raws[0], member_raws))

    clusters.sort(key=lambda item: item[0])
    out: list[RefCluster] = []
    for cluster_id, (_, member_raws) in enumerate(clusters, start=1):
        members = tuple(ClusterMember(parsed[raw], counts[raw]) for raw in member_raws)
        canonical = min(range(len(members)), key=lambda k: (-members[k].count, members[k].fields.raw))
        out.append(RefCluster(cluster_id=cluster_id, members=members, suggested_canonical=canonical))
    return out


def _volume_page_compatible(a: CitedRefFields, b: CitedRefFields) -> bool:
    if a.volume is not None and b.volume is not None and a.volume != b.volume:
        return False
    if a.page is not None and b.page is not None and a.page != b.page:
        return False
    return True


class MergeChainError(ValueError):
    """A variant maps to a string that itself maps elsewhere."""


def validate_mapping(mapping: Mapping[str, str]) -> None:
    """Reject mappings with chains; identity entries are always fine."""
    for variant, canonical in mapping.items():
        target = mapping.get(canonical, canonical)
        if target != canonical:
            raise MergeChainError(
                f"merge chain: {variant!r} -> {canonical!r} -> {target!r}"
            )


class MergeMap:
    """Curator-approved variant -> canonical rewrites plus an audit log.

    The mapping is kept chain-free by construction: recording a merge onto a
    variant that is itself merged resolves to the final canonical, and
    re-canonicalizing an existing canonical re-points everything mapped to
    it. The audit log preserves every decision (including rejections) and
    replays to an identical map.
    """

    def __init__(self) -> None:
        self._map: dict[str, str] = {}
        self.log: list[dict] = []

    def canonical(self, raw: str) -> str:
        return self._map.get(raw, raw)

    @property
    def mapping(self) -> dict[str, str]:
        return {v: c for v, c in self._map.items() if v != c}

    def __len__(self) -> int:
        return len(self.mapping)

    def record(self, variant: str, canonical: str, decision: str = "accept", timestamp: str | None = None) -> None:
        if decision not in ("accept", "reject", "edit"):
            raise ValueError(f"unknown decision {decision!r}")
        if timestamp is None:
            timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        self.log.append({"variant": variant, "canonical": canonical, "decision": decision, "timestamp": timestamp})
        if decision == "reject":
            return
        target = self._map.get(canonical, canonical)
        self._map[canonical] = canonical if canonical == target else target
        self._map[target] = target
        self._map[variant] = target
        # re-point anything that previously resolved to the variant
        for key, value in list(self._map.items()):
            if value == variant and key != variant:
                self._map[key] = target

    def to_json(self) -> list[dict]:
        return list(self.log)

    @classmethod
    def from_json(cls, entries: Iterable[Mapping]) -> "MergeMap":
        merge_map = cls()
        for entry in entries:
            merge_map.record(
                entry["variant"],
                entry["canonical"],
                entry.get("decision", "accept"),
                entry.get("timestamp"),
            )
        return merge_map


def apply_merges(
    counts: Mapping[str, int],
    merge_map: MergeMap | Mapping[str, str],
) -> dict[str, int]:
    """Rewrite a variant->count table through a merge map.

    Counts of merged variants sum onto their canonical; the total is
    conserved for any valid map. Raw mappings are validated (chains are an
    error); MergeMap instances are chain-free by construction.
    """
    if isinstance(merge_map, MergeMap):
        mapping = merge_map._map
    else:
        mapping = dict(merge_map)
        validate_mapping(mapping)
    merged: dict[str, int] = {}
    for raw in sorted(counts):
        canonical = mapping.get(raw, raw)
        merged[canonical] = merged.get(canonical, 0) + counts[raw]
    return merged


__all__ = [
    "BACKEND",
    "DEFAULT_THRESHOLD",
    "ClusterMember",
    "MergeChainError",
    "MergeMap",
    "RefCluster",
    "apply_merges",
    "levenshtein",
    "link_limit",
    "normalize_compare_key",
    "pairwise_links",
    "similarity",
    "suggest_clusters",
    "validate_mapping",
]
