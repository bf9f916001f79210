"""Analysis session: one corpus, its saved sets, the active merge map, and
a parameter-keyed cache with a version token.

The version token increments on every mutation (query script run, cluster
decision, merge-map replacement) and doubles as the cache generation: a
mutation empties the cache, so no stale analysis can ever be served. All
mutating entry points funnel through a single lock.
"""

from __future__ import annotations

import threading
from typing import Callable

from .corpus import Corpus, RecordSet
from .dedup import MergeMap, RefCluster, apply_merges, suggest_clusters
from .query import run_script


class Session:
    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.sets: dict[str, RecordSet] = {}
        self.merge_map = MergeMap()
        self.version = 1
        self._cache: dict = {}
        self._clusters: dict[int, RefCluster] = {}
        self._cluster_params: tuple | None = None
        self._lock = threading.Lock()

    # -- cache -------------------------------------------------------------

    def cached(self, key: tuple, compute: Callable):
        """Memoize ``compute()`` under ``key`` for the current version."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def _mutated(self) -> int:
        self.version += 1
        self._cache.clear()
        self._clusters = {}
        self._cluster_params = None
        return self.version

    # -- mutations ---------------------------------------------------------

    def run_query_script(self, script: str) -> tuple[int, dict[str, RecordSet]]:
        with self._lock:
            defined = run_script(script, self.corpus, self.sets)
            self.sets.update(defined)
            return self._mutated(), defined

    def decide_cluster(self, cluster_id: int, decision: str, canonical: str | None = None) -> int:
        """Apply a curator decision to a previously listed cluster."""
        with self._lock:
            cluster = self._clusters.get(cluster_id)
            if cluster is None:
                raise KeyError(f"unknown cluster {cluster_id}")
            if decision not in ("accept", "reject", "edit"):
                raise ValueError(f"unknown decision {decision!r}")
            if decision == "edit" and not canonical:
                raise ValueError("edit decision needs a canonical string")
            target = canonical or cluster.members[cluster.suggested_canonical].fields.raw
            for member in cluster.members:
                if member.fields.raw == target and decision != "reject":
                    continue
                self.merge_map.record(member.fields.raw, target, "edit" if decision == "edit" else decision)
            return self._mutated()

    def replace_merge_map(self, merge_map: MergeMap) -> int:
        with self._lock:
            self.merge_map = merge_map
            return self._mutated()

    # -- reads ---------------------------------------------------------------

    def occurrence_counts(self) -> dict[str, int]:
        def compute():
            counts: dict[str, int] = {}
            for _, raw in self.corpus.cited_refs():
                counts[raw] = counts.get(raw, 0) + 1
            return counts

        return self.cached(("occurrences",), compute)

    def merged_counts(self) -> dict[str, int]:
        return self.cached(("merged",), lambda: apply_merges(self.occurrence_counts(), self.merge_map))

    def clusters(self, threshold: float, use_volume_page: bool) -> list[RefCluster]:
        """Suggest clusters over the current canonical variants and remember
        them so ids stay valid until the next mutation."""
        params = (threshold, use_volume_page)

        def compute():
            refs = []
            for _, raw in self.corpus.cited_refs():
                refs.append(self.merge_map.canonical(raw))
            return suggest_clusters(refs, threshold=threshold, use_volume_page=use_volume_page)

        result = self.cached(("clusters", params), compute)
        self._clusters = {c.cluster_id: c for c in result}
        self._cluster_params = params
        return result
