# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors ``homx._pykernels`` exactly.

Counts are accumulated in 64-bit words; on overflow the wrapper raises
``OverflowError`` and the dispatcher reruns the pure-Python kernel.
Canonical labeling is limited to 64 vertices and hom counting to 64 colors.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

from ._pykernels import weighted_homs  # noqa: F401  (no compiled variant)

BACKEND = "cython"

cdef extern from *:
    """
    static inline int homx_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int homx_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    static inline int homx_mul_ovf(unsigned long long a, unsigned long long b, unsigned long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int homx_add_ovf(unsigned long long a, unsigned long long b, unsigned long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int homx_popcount(unsigned long long x) nogil
    int homx_ctz(unsigned long long x) nogil
    int homx_mul_ovf(unsigned long long a, unsigned long long b, unsigned long long *r) nogil
    int homx_add_ovf(unsigned long long a, unsigned long long b, unsigned long long *r) nogil


# -- homomorphism counting ------------------------------------------------------

cdef struct HomCtx:
    int m
    uint64_t full
    uint64_t* nbr
    int* pstart
    int* plist
    char* terminal
    int* colors
    int overflow


cdef unsigned long long _hom_rec(HomCtx* c, int i) nogil:
    cdef uint64_t cand = c.full
    cdef int a, b
    cdef unsigned long long cnt, sub, total, r
    for a in range(c.pstart[i], c.pstart[i + 1]):
        cand &= c.nbr[c.colors[c.plist[a]]]
    if cand == 0:
        return 0
    if c.terminal[i]:
        cnt = homx_popcount(cand)
        if i == c.m - 1:
            return cnt
        sub = _hom_rec(c, i + 1)
        if sub == 0:
            return 0
        if homx_mul_ovf(cnt, sub, &r):
            c.overflow = 1
            return 0
        return r
    total = 0
    while cand:
        b = homx_ctz(cand)
        cand &= cand - 1
        c.colors[i] = b
        sub = _hom_rec(c, i + 1)
        if c.overflow:
            return 0
        if homx_add_ovf(total, sub, &total):
            c.overflow = 1
            return 0
    return total


def count_homs(prev, terminal, nbr, int q):
    cdef int m = len(prev)
    if m == 0:
        return 1
    if q > 64:
        raise OverflowError("compiled kernel supports at most 64 colors")
    cdef int total_prev = sum(len(p) for p in prev)
    cdef HomCtx c
    c.m = m
    c.full = (<uint64_t>1 << q) - 1 if q < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    c.nbr = <uint64_t*>malloc(q * sizeof(uint64_t))
    c.pstart = <int*>malloc((m + 1) * sizeof(int))
    c.plist = <int*>malloc((total_prev + 1) * sizeof(int))
    c.terminal = <char*>malloc(m * sizeof(char))
    c.colors = <int*>malloc(m * sizeof(int))
    c.overflow = 0
    cdef int i, k = 0
    cdef unsigned long long result
    try:
        for i in range(q):
            c.nbr[i] = <uint64_t>nbr[i]
        for i in range(m):
            c.pstart[i] = k
            for j in prev[i]:
                c.plist[k] = j
                k += 1
            c.terminal[i] = 1 if terminal[i] else 0
            c.colors[i] = 0
        c.pstart[m] = k
        with nogil:
            result = _hom_rec(&c, 0)
        if c.overflow:
            raise OverflowError("hom count exceeds 64 bits")
        return result
    finally:
        free(c.nbr)
        free(c.pstart)
        free(c.plist)
        free(c.terminal)
        free(c.colors)


# -- canonical labeling -----------------------------------------------------------

cdef struct CanCtx:
    int n
    uint64_t* adj
    int nwords
    uint64_t* best
    uint64_t* scratch
    int* best_colors
    int have_best


cdef int _refine(CanCtx* c, int* colors) nogil:
    """Refine ``colors`` in place to the coarsest equitable partition.

    Returns the number of cells. Ordering matches the Python kernel: cells
    sorted by (old color, neighbor counts per old cell).
    """
    cdef int n = c.n
    cdef int k = 0, v, w, t, j, newk, cmp
    for v in range(n):
        if colors[v] + 1 > k:
            k = colors[v] + 1
    cdef int width
    cdef int* sig = <int*>malloc(n * (n + 1) * sizeof(int))
    cdef int* order = <int*>malloc(n * sizeof(int))
    cdef uint64_t* cells = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef int* newcol = <int*>malloc(n * sizeof(int))
    while True:
        width = k + 1
        for t in range(k):
            cells[t] = 0
        for v in range(n):
            cells[colors[v]] |= (<uint64_t>1) << v
        for v in range(n):
            sig[v * width] = colors[v]
            for t in range(k):
                sig[v * width + 1 + t] = homx_popcount(c.adj[v] & cells[t])
        # insertion sort of vertices by signature
        for v in range(n):
            order[v] = v
        for v in range(1, n):
            w = order[v]
            j = v - 1
            while j >= 0:
                cmp = 0
                for t in range(width):
                    if sig[order[j] * width + t] != sig[w * width + t]:
                        cmp = 1 if sig[order[j] * width + t] > sig[w * width + t] else -1
                        break
                if cmp <= 0:
                    break
                order[j + 1] = order[j]
                j -= 1
            order[j + 1] = w
        newk = 0
        for v in range(n):
            if v > 0:
                for t in range(width):
                    if sig[order[v - 1] * width + t] != sig[order[v] * width + t]:
                        newk += 1
                        break
            newcol[order[v]] = newk
        newk += 1
        for v in range(n):
            colors[v] = newcol[v]
        if newk == k:
            break
        k = newk
    free(sig)
    free(order)
    free(cells)
    free(newcol)
    return k


cdef void _individualize(int n, int* src, int* dst, int v) nogil:
    cdef int u, i, k = 0
    cdef int* seen = <int*>malloc(2 * n * sizeof(int))
    for i in range(2 * n):
        seen[i] = -1
    for u in range(n):
        dst[u] = 2 * src[u] + 1
    dst[v] = 2 * src[v]
    for u in range(n):
        seen[dst[u]] = 1
    for i in range(2 * n):
        if seen[i] >= 0:
            seen[i] = k
            k += 1
    for u in range(n):
        dst[u] = seen[dst[u]]
    free(seen)


cdef void _leaf(CanCtx* c, int* colors) nogil:
    cdef int n = c.n
    cdef int i, j, t = 0, w
    cdef int* inv = <int*>malloc(n * sizeof(int))
    cdef uint64_t row
    for i in range(n):
        inv[colors[i]] = i
    for w in range(c.nwords):
        c.scratch[w] = 0
    for j in range(1, n):
        row = c.adj[inv[j]]
        for i in range(j):
            if (row >> inv[i]) & 1:
                c.scratch[t >> 6] |= (<uint64_t>1) << (63 - (t & 63))
            t += 1
    free(inv)
    cdef int better = 0
    if not c.have_best:
        better = 1
    else:
        for w in range(c.nwords):
            if c.scratch[w] != c.best[w]:
                better = 1 if c.scratch[w] > c.best[w] else 0
                break
    if better:
        memcpy(c.best, c.scratch, c.nwords * sizeof(uint64_t))
        memcpy(c.best_colors, colors, n * sizeof(int))
        c.have_best = 1


cdef void _search(CanCtx* c, int* colors) nogil:
    cdef int n = c.n
    cdef int k = _refine(c, colors)
    if k == n:
        _leaf(c, colors)
        return
    cdef int* counts = <int*>malloc(k * sizeof(int))
    cdef int* tried = <int*>malloc(n * sizeof(int))
    cdef int* child = <int*>malloc(n * sizeof(int))
    cdef int t, v, u, ntried = 0, target = -1, skip
    cdef uint64_t av
    for t in range(k):
        counts[t] = 0
    for v in range(n):
        counts[colors[v]] += 1
    for t in range(k):
        if counts[t] > 1:
            target = t
            break
    for v in range(n):
        if colors[v] != target:
            continue
        av = c.adj[v]
        skip = 0
        for t in range(ntried):
            u = tried[t]
            if (av & ~((<uint64_t>1) << u)) == (c.adj[u] & ~((<uint64_t>1) << v)):
                skip = 1
                break
        if skip:
            continue
        tried[ntried] = v
        ntried += 1
        _individualize(n, colors, child, v)
        _search(c, child)
    free(counts)
    free(tried)
    free(child)


def canonical_labeling(adj):
    cdef int n = len(adj)
    if n == 0:
        return []
    if n > 64:
        raise OverflowError("compiled canonical labeling supports at most 64 vertices")
    cdef CanCtx c
    cdef int nbits = n * (n - 1) // 2
    c.n = n
    c.nwords = nbits // 64 + 1
    c.adj = <uint64_t*>malloc(n * sizeof(uint64_t))
    c.best = <uint64_t*>malloc(c.nwords * sizeof(uint64_t))
    c.scratch = <uint64_t*>malloc(c.nwords * sizeof(uint64_t))
    c.best_colors = <int*>malloc(n * sizeof(int))
    c.have_best = 0
    cdef int* colors = <int*>malloc(n * sizeof(int))
    cdef int v
    try:
        for v in range(n):
            c.adj[v] = <uint64_t>adj[v]
            colors[v] = 0
        with nogil:
            _search(&c, colors)
        return [c.best_colors[v] for v in range(n)]
    finally:
        free(c.adj)
        free(c.best)
        free(c.scratch)
        free(c.best_colors)
        free(colors)
