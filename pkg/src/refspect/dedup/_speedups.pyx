# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled string-distance kernel.

API-identical to `_fallback`; the all-pairs scan is the hot loop when
suggesting merge clusters over hundreds of thousands of reference variants.
"""

from libc.stdlib cimport free, malloc


cdef int _lev(const unsigned int* a, int la, const unsigned int* b, int lb, int limit) noexcept nogil:
    # requires la <= lb; returns the distance, or limit + 1 once it is
    # provably above limit (limit < 0 means unbounded)
    cdef int i, j, v, w, cost, best, dist
    cdef unsigned int bj
    cdef int* prev
    cdef int* cur
    cdef int* tmp
    if la == 0:
        dist = lb
        if limit >= 0 and dist > limit:
            return limit + 1
        return dist
    if limit >= 0 and lb - la > limit:
        return limit + 1
    prev = <int*> malloc((la + 1) * sizeof(int))
    cur = <int*> malloc((la + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        return -1
    for i in range(la + 1):
        prev[i] = i
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
        if limit >= 0 and best > limit:
            free(prev)
            free(cur)
            return limit + 1
        tmp = prev
        prev = cur
        cur = tmp
    dist = prev[la]
    free(prev)
    free(cur)
    if limit >= 0 and dist > limit:
        return limit + 1
    return dist


cdef unsigned int* _encode(s, int* out_len) except NULL:
    cdef int n = len(s)
    cdef int i
    cdef unsigned int* buf = <unsigned int*> malloc((n if n > 0 else 1) * sizeof(unsigned int))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = <unsigned int> ord(s[i])
    out_len[0] = n
    return buf


def levenshtein(a, b, limit=None):
    """Edit distance; with ``limit``, returns ``limit + 1`` once exceeded."""
    cdef int la = 0, lb = 0, lim, dist
    cdef unsigned int* ba
    cdef unsigned int* bb
    if a == b:
        return 0
    lim = -1 if limit is None else <int> limit
    if lim >= 0 and abs(len(a) - len(b)) > lim:
        return lim + 1
    if len(a) > len(b):
        a, b = b, a
    ba = _encode(a, &la)
    try:
        bb = _encode(b, &lb)
    except MemoryError:
        free(ba)
        raise
    try:
        dist = _lev(ba, la, bb, lb, lim)
    finally:
        free(ba)
        free(bb)
    if dist < 0:
        raise MemoryError()
    return dist


def similarity(a, b):
    """Normalized similarity: 1 - distance / max(len); 1.0 for two empties."""
    cdef int m = max(len(a), len(b))
    if m == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / m


def link_limit(threshold, m):
    """Max edit distance at which similarity over length m clears threshold."""
    return int((1.0 - <double> threshold) * m + 1e-9)


def pairwise_links(keys, threshold):
    """All index pairs (i < j) whose keys reach the similarity threshold."""
    cdef int n = len(keys)
    cdef int i, j, li, lj, m, limit, dist
    cdef double t = threshold
    cdef unsigned int** bufs
    cdef int* lens
    links = []
    if n == 0:
        return links
    bufs = <unsigned int**> malloc(n * sizeof(unsigned int*))
    lens = <int*> malloc(n * sizeof(int))
    if bufs == NULL or lens == NULL:
        if bufs != NULL:
            free(bufs)
        if lens != NULL:
            free(lens)
        raise MemoryError()
    for i in range(n):
        bufs[i] = NULL
    try:
        for i in range(n):
            bufs[i] = _encode(keys[i], &lens[i])
        for i in range(n):
            li = lens[i]
            for j in range(i + 1, n):
                lj = lens[j]
                m = li if li > lj else lj
                if m == 0:
                    links.append((i, j))
                    continue
                limit = <int> ((1.0 - t) * m + 1e-9)
                if (li - lj if li > lj else lj - li) > limit:
                    continue
                if li <= lj:
                    dist = _lev(bufs[i], li, bufs[j], lj, limit)
                else:
                    dist = _lev(bufs[j], lj, bufs[i], li, limit)
                if dist < 0:
                    raise MemoryError()
                if dist <= limit:
                    links.append((i, j))
    finally:
        for i in range(n):
            if bufs[i] != NULL:
                free(bufs[i])
        free(bufs)
        free(lens)
    return links
