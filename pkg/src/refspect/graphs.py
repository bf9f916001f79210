"""Keyword co-occurrence and country co-authorship graphs.

Graphs are undirected with canonical a < b edges, full counting (every
member of a pair gets credit 1 per record), and deterministic node order
(alphabetical labels). Layout is deliberately absent: positions are a
presentation concern.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .corpus import Corpus
from .modularity import greedy_modularity


@dataclass(frozen=True)
class GraphNode:
    label: str
    weight: int
    score: float | None = None
    cluster: int | None = None


@dataclass(frozen=True)
class GraphEdge:
    a: int
    b: int
    weight: int


@dataclass(frozen=True)
class BiblioGraph:
    kind: str  # 'keyword' or 'country'
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for e in self.edges:
            if not 0 <= e.a < e.b < len(self.nodes):
                raise ValueError(f"edge ({e.a}, {e.b}) breaks canonical ordering")

    def node_index(self) -> dict[str, int]:
        return {node.label: i for i, node in enumerate(self.nodes)}

    def total_link_strength(self, index: int) -> int:
        return sum(e.weight for e in self.edges if index in (e.a, e.b))


def _pair_counts(groups: Iterable[Iterable[str]]) -> tuple[dict[str, int], dict[tuple[str, str], int]]:
    """Occurrence and co-occurrence counts over per-record label groups."""
    occurrences: dict[str, int] = {}
    pairs: dict[tuple[str, str], int] = {}
    for group in groups:
        labels = sorted(set(group))
        for label in labels:
            occurrences[label] = occurrences.get(label, 0) + 1
        for i, first in enumerate(labels):
            for second in labels[i + 1 :]:
                key = (first, second)
                pairs[key] = pairs.get(key, 0) + 1
    return occurrences, pairs


def _assemble(kind: str, labels: list[str], weights: dict[str, int], pairs: dict[tuple[str, str], int], params: dict) -> BiblioGraph:
    labels = sorted(labels)
    index = {label: i for i, label in enumerate(labels)}
    nodes = tuple(GraphNode(label=label, weight=weights[label]) for label in labels)
    edges = []
    for (first, second), weight in pairs.items():
        if first in index and second in index:
            edges.append(GraphEdge(index[first], index[second], weight))
    edges.sort(key=lambda e: (e.a, e.b))
    return BiblioGraph(kind=kind, nodes=nodes, edges=tuple(edges), params=params)


def keyword_cooccurrence(corpus: Corpus, min_occurrences: int = 1, max_nodes: int | None = None) -> BiblioGraph:
    """Co-occurrence graph over keywords-plus terms.

    A node's weight is the number of records carrying the term; an edge's
    weight is the number of records carrying both endpoints. Terms below
    ``min_occurrences`` records are excluded. With ``max_nodes``, the nodes
    with the greatest total link strength are kept, ties alphabetical.
    """
    if min_occurrences < 1:
        raise ValueError(f"min_occurrences must be >= 1, got {min_occurrences}")
    occurrences, pairs = _pair_counts(rec.keywords_plus for rec in corpus.records)
    kept = [label for label, n in occurrences.items() if n >= min_occurrences]
    params = {"min_occurrences": min_occurrences, "max_nodes": max_nodes}
    graph = _assemble("keyword", kept, occurrences, pairs, params)
    if max_nodes is not None and len(graph.nodes) > max_nodes:
        strength = {i: 0 for i in range(len(graph.nodes))}
        for e in graph.edges:
            strength[e.a] += e.weight
            strength[e.b] += e.weight
        ranked = sorted(range(len(graph.nodes)), key=lambda i: (-strength[i], graph.nodes[i].label))
        keep_labels = [graph.nodes[i].label for i in ranked[:max_nodes]]
        graph = _assemble("keyword", keep_labels, occurrences, pairs, params)
    return graph


def country_coauthorship(
    corpus: Corpus,
    min_pubs: int = 1,
    max_countries_per_paper: int = 25,
    drop_disconnected: bool = False,
) -> BiblioGraph:
    """Co-authorship graph over countries.

    Papers with more than ``max_countries_per_paper`` countries are skipped
    entirely. A node's weight counts every non-skipped paper listing the
    country; the ``min_pubs`` threshold counts only co-authored papers
    (those with at least two countries). Edge weight is the number of
    papers listing both countries. ``drop_disconnected`` keeps only the
    largest connected component (ties: the one with the alphabetically
    first country).
    """
    if min_pubs < 1:
        raise ValueError(f"min_pubs must be >= 1, got {min_pubs}")
    if max_countries_per_paper < 2:
        raise ValueError(f"max_countries_per_paper must be >= 2, got {max_countries_per_paper}")
    usable = [rec.countries for rec in corpus.records if 0 < len(rec.countries) <= max_countries_per_paper]
    weights, pairs = _pair_counts(usable)
    coauthored: dict[str, int] = {}
    for countries in usable:
        if len(countries) >= 2:
            for country in countries:
                coauthored[country] = coauthored.get(country, 0) + 1
    kept = [label for label in weights if coauthored.get(label, 0) >= min_pubs]
    params = {"min_pubs": min_pubs, "max_countries_per_paper": max_countries_per_paper, "drop_disconnected": drop_disconnected}
    graph = _assemble("country", kept, weights, pairs, params)
    if drop_disconnected and graph.nodes:
        component = _largest_component(graph)
        keep_labels = [graph.nodes[i].label for i in sorted(component)]
        graph = _assemble("country", keep_labels, weights, pairs, params)
    return graph


def _largest_component(graph: BiblioGraph) -> set[int]:
    neighbors: dict[int, set[int]] = {i: set() for i in range(len(graph.nodes))}
    for e in graph.edges:
        neighbors[e.a].add(e.b)
        neighbors[e.b].add(e.a)
    seen: set[int] = set()
    best: set[int] = set()
    for start in range(len(graph.nodes)):
        if start in seen:
            continue
        component = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in neighbors[node]:
                if nxt not in component:
                    component.add(nxt)
                    stack.append(nxt)
        seen |= component
        # first-seen wins ties: it contains the alphabetically smallest label
        if len(component) > len(best):
            best = component
    return best


def overlay_mean_year(graph: BiblioGraph, corpus: Corpus) -> BiblioGraph:
    """Score every node with the mean publication year of its papers.

    "Its papers" are exactly the papers counted in the node's weight, so the
    same skip rules the builder used apply here.
    """
    if graph.kind == "keyword":
        def papers_of(label: str) -> list[int]:
            return [rec.pub_year for rec in corpus.records if label in rec.keywords_plus]
    elif graph.kind == "country":
        limit = graph.params.get("max_countries_per_paper", 25)
        def papers_of(label: str) -> list[int]:
            return [
                rec.pub_year
                for rec in corpus.records
                if 0 < len(rec.countries) <= limit and label in rec.countries
            ]
    else:
        raise ValueError(f"unknown graph kind {graph.kind!r}")
    nodes = []
    for node in graph.nodes:
        years = papers_of(node.label)
        score = float(Fraction(sum(years), len(years))) if years else None
        nodes.append(replace(node, score=score))
    return replace(graph, nodes=tuple(nodes))


def cluster_graph(graph: BiblioGraph, resolution: float | Fraction = 1, seed: int = 0) -> BiblioGraph:
    """Assign every node a cluster id via greedy modularity (1..k, by
    descending cluster size)."""
    assignments = greedy_modularity(
        len(graph.nodes),
        [(e.a, e.b, e.weight) for e in graph.edges],
        resolution=resolution,
        seed=seed,
    )
    nodes = tuple(replace(node, cluster=assignments[i]) for i, node in enumerate(graph.nodes))
    return replace(graph, nodes=nodes)


# -- serialization ---------------------------------------------------------

def graph_to_json(graph: BiblioGraph) -> dict:
    return {
        "kind": graph.kind,
        "params": dict(graph.params),
        "items": [
            {"id": i + 1, "label": n.label, "weight": n.weight, "score": n.score, "cluster": n.cluster}
            for i, n in enumerate(graph.nodes)
        ],
        "links": [
            {"source_id": e.a + 1, "target_id": e.b + 1, "strength": e.weight}
            for e in graph.edges
        ],
    }


def export_graph(graph: BiblioGraph, format: str = "graph_json") -> str:
    if format == "graph_json":
        return json.dumps(graph_to_json(graph), indent=1, sort_keys=True) + "\n"
    if format == "pajek":
        lines = [f"*Vertices {len(graph.nodes)}"]
        for i, node in enumerate(graph.nodes, start=1):
            label = node.label.replace('"', "'")
            lines.append(f'{i} "{label}"')
        lines.append("*Edges")
        for e in graph.edges:
            lines.append(f"{e.a + 1} {e.b + 1} {e.weight}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {format!r}")


_PAJEK_VERTEX_RE = re.compile(r'^(\d+)\s+"([^"]*)"')


def import_graph(text: str, format: str = "graph_json") -> BiblioGraph:
    """Read a graph back. graph_json restores everything; pajek restores
    labels and edges only (weights/scores/clusters are not part of the
    format, imported node weights are 0)."""
    if format == "graph_json":
        doc = json.loads(text)
        items = sorted(doc["items"], key=lambda item: item["id"])
        ids = {item["id"]: pos for pos, item in enumerate(items)}
        nodes = tuple(
            GraphNode(item["label"], item["weight"], item.get("score"), item.get("cluster"))
            for item in items
        )
        edges = []
        for link in doc["links"]:
            a, b = ids[link["source_id"]], ids[link["target_id"]]
            if a > b:
                a, b = b, a
            edges.append(GraphEdge(a, b, link["strength"]))
        edges.sort(key=lambda e: (e.a, e.b))
        return BiblioGraph(kind=doc.get("kind", "keyword"), nodes=nodes, edges=tuple(edges), params=doc.get("params", {}))
    if format == "pajek":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        nodes = []
        edges = []
        section = None
        for line in lines:
            lowered = line.lower()
            if lowered.startswith("*vertices"):
                section = "vertices"
                continue
            if lowered.startswith("*edges") or lowered.startswith("*arcs"):
                section = "edges"
                continue
            if section == "vertices":
                m = _PAJEK_VERTEX_RE.match(line)
                if not m:
                    raise ValueError(f"bad pajek vertex line: {line!r}")
                nodes.append(GraphNode(label=m.group(2), weight=0))
            elif section == "edges":
                parts = line.split()
                a, b = int(parts[0]) - 1, int(parts[1]) - 1
                weight = int(parts[2]) if len(parts) > 2 else 1
                if a > b:
                    a, b = b, a
                edges.append(GraphEdge(a, b, weight))
        edges.sort(key=lambda e: (e.a, e.b))
        return BiblioGraph(kind="keyword", nodes=tuple(nodes), edges=tuple(edges), params={})
    raise ValueError(f"unknown graph format {format!r}")
