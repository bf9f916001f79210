"""Pure-Python string-distance kernel.

Same API as the compiled `_speedups` module; used when the extension is
unavailable or REFSPECT_PURE=1. Both implementations must return identical
results for identical inputs, including the link threshold quantization.
"""

from __future__ import annotations


def levenshtein(a: str, b: str, limit: int | None = None) -> int:
    """Edit distance; with ``limit``, returns ``limit + 1`` once exceeded."""
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb if limit is None or lb <= limit else limit + 1
    if lb == 0:
        return la if limit is None or la <= limit else limit + 1
    if limit is not None and abs(la - lb) > limit:
        return limit + 1
    if la > lb:
        a, b, la, lb = b, a, lb, la
    prev = list(range(la + 1))
    cur = [0] * (la + 1)
    for j in range(1, lb + 1):
        cur[0] = j
        bj = b[j - 1]
        best = j
        for i in range(1, la + 1):
            cost = 0 if a[i - 1] == bj else 1
            v = prev[i] + 1
            w = cur[i - 1] + 1
            if w < v:
                v = w
            w = prev[i - 1] + cost
            if w < v:
                v = w
            cur[i] = v
            if v < best:
                best = v
        if limit is not None and best > limit:
            return limit + 1
        prev, cur = cur, prev
    dist = prev[la]
    if limit is not None and dist > limit:
        return limit + 1
    return dist


def similarity(a: str, b: str) -> float:
    """Normalized similarity: 1 - distance / max(len); 1.0 for two empties."""
    m = max(len(a), len(b))
    if m == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / m


def link_limit(threshold: float, m: int) -> int:
    """Max edit distance at which similarity over length m clears threshold.

    The epsilon absorbs float artifacts like (1 - 0.9) * 10 = 0.999...98 so
    exact-boundary thresholds behave as written.
    """
    return int((1.0 - threshold) * m + 1e-9)


def pairwise_links(keys: list[str], threshold: float) -> list[tuple[int, int]]:
    """All index pairs (i < j) whose keys reach the similarity threshold."""
    n = len(keys)
    lens = [len(k) for k in keys]
    links: list[tuple[int, int]] = []
    for i in range(n):
        ki = keys[i]
        li = lens[i]
        for j in range(i + 1, n):
            lj = lens[j]
            m = li if li > lj else lj
            if m == 0:
                links.append((i, j))
                continue
            limit = link_limit(threshold, m)
            if abs(li - lj) > limit:
                continue
            if levenshtein(ki, keys[j], limit) <= limit:
                links.append((i, j))
    return links
