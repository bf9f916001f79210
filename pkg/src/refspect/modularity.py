"""Greedy agglomerative modularity clustering for weighted graphs.

Starts from singletons and repeatedly merges the connected pair of
communities with the largest modularity gain, evaluating every partition
along the way (through to one community per connected component) and
returning the best one seen. With resolution r = p/q and total edge weight
m, modularity is compared through the integer score

    Q * 4 * m^2 * q  =  sum over communities of (4*m*q*e_c - p*a_c^2)

where e_c is the intra-community edge weight and a_c the weighted degree
sum. Integer arithmetic makes every comparison, and therefore the whole
partition, exactly reproducible; ties prefer the pair with the smallest
community representatives. The ``seed`` argument is accepted for interface
stability but never consulted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def greedy_modularity(
    n_nodes: int,
    edges: Iterable[tuple[int, int, int]],
    resolution: float | Fraction = 1,
    seed: int = 0,
) -> list[int]:
    """Cluster ids (1..k) per node, numbered by descending cluster size.

    ``edges`` are undirected (u, v, weight) triples with u != v and
    positive integer weights; parallel entries add up.
    """
    res = Fraction(resolution)
    if res <= 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    p, q = res.numerator, res.denominator

    weight: dict[tuple[int, int], int] = {}
    degree = [0] * n_nodes
    for u, v, w in edges:
        if u == v:
            raise ValueError(f"self-loop on node {u}")
        if not (0 <= u < n_nodes and 0 <= v < n_nodes):
            raise ValueError(f"edge ({u}, {v}) outside node range")
        if w <= 0:
            raise ValueError(f"edge weight must be positive, got {w}")
        key = (u, v) if u < v else (v, u)
        weight[key] = weight.get(key, 0) + w
        degree[u] += w
        degree[v] += w
    m = sum(weight.values())

    if n_nodes == 0:
        return []
    if m == 0:
        return _number_clusters(n_nodes, [{i} for i in range(n_nodes)])

    # community state, keyed by representative = min node index
    members: dict[int, set[int]] = {i: {i} for i in range(n_nodes)}
    a: dict[int, int] = {i: degree[i] for i in range(n_nodes)}
    e_in: dict[int, int] = {i: 0 for i in range(n_nodes)}
    adj: dict[int, dict[int, int]] = {i: {} for i in range(n_nodes)}
    for (u, v), w in weight.items():
        adj[u][v] = adj[u].get(v, 0) + w
        adj[v][u] = adj[v].get(u, 0) + w

    four_mq = 4 * m * q
    score = sum(four_mq * e_in[c] - p * a[c] * a[c] for c in members)
    best_score = score
    best_step = 0
    merges: list[tuple[int, int]] = []

    while True:
        best_pair: tuple[int, int] | None = None
        best_gain = None
        for c1 in sorted(adj):
            row = adj[c1]
            for c2 in sorted(row):
                if c2 <= c1:
                    continue
                gain = four_mq * row[c2] - 2 * p * a[c1] * a[c2]
                if best_gain is None or gain > best_gain or (gain == best_gain and (c1, c2) < best_pair):
                    best_gain = gain
                    best_pair = (c1, c2)
        if best_pair is None:
            break
        c1, c2 = best_pair
        merges.append(best_pair)
        score += best_gain
        e_in[c1] += e_in.pop(c2) + adj[c1][c2]
        a[c1] += a.pop(c2)
        members[c1] |= members.pop(c2)
        row2 = adj.pop(c2)
        del adj[c1][c2]
        for other, w in row2.items():
            if other == c1:
                continue
            adj[other].pop(c2)
            adj[c1][other] = adj[c1].get(other, 0) + w
            adj[other][c1] = adj[c1][other]
        if score > best_score:
            best_score = score
            best_step = len(merges)

    # replay the merge prefix that produced the best partition
    parent = list(range(n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c1, c2 in merges[:best_step]:
        parent[find(c2)] = find(c1)
    groups: dict[int, set[int]] = {}
    for node in range(n_nodes):
        groups.setdefault(find(node), set()).add(node)
    return _number_clusters(n_nodes, list(groups.values()))


def _number_clusters(n_nodes: int, groups: Sequence[set[int]]) -> list[int]:
    ordered = sorted(groups, key=lambda g: (-len(g), min(g)))
    out = [0] * n_nodes
    for cluster_id, group in enumerate(ordered, start=1):
        for node in group:
            out[node] = cluster_id
    return out
