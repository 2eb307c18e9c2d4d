"""Pure-Python hot kernels.

Same API and same results as the compiled ``_ckernels`` module; used when
the extension is unavailable or ``HOMX_PURE=1`` is set.

Homomorphism kernels take a vertex ordering already compiled into
``prev[i]`` (earlier positions adjacent to position ``i``) and
``terminal[i]`` (no later position is adjacent to ``i``). A terminal
position's color never constrains later positions, so it contributes a
multiplicative factor instead of a branch.
"""

from __future__ import annotations

import sys

BACKEND = "python"


def count_homs(prev, terminal, nbr, q):
    """Number of colorings of the ordered positions respecting ``nbr``."""
    m = len(prev)
    if m == 0:
        return 1
    full = (1 << q) - 1
    colors = [0] * m
    last = m - 1

    def rec(i):
        cand = full
        for j in prev[i]:
            cand &= nbr[colors[j]]
        if not cand:
            return 0
        if terminal[i]:
            c = cand.bit_count()
            return c if i == last else c * rec(i + 1)
        total = 0
        while cand:
            low = cand & -cand
            colors[i] = low.bit_length() - 1
            cand ^= low
            total += rec(i + 1)
        return total

    if m + 50 > sys.getrecursionlimit():
        sys.setrecursionlimit(m + 100)
    return rec(0)


def weighted_homs(prev, terminal, nbr, weights):
    """Sum over colorings of the product of integer color weights."""
    m = len(prev)
    if m == 0:
        return 1
    q = len(weights)
    full = (1 << q) - 1
    colors = [0] * m
    last = m - 1
    mass_cache = {}

    def mass(mask):
        s = mass_cache.get(mask)
        if s is None:
            s = 0
            mm = mask
            while mm:
                low = mm & -mm
                s += weights[low.bit_length() - 1]
                mm ^= low
            mass_cache[mask] = s
        return s

    def rec(i):
        cand = full
        for j in prev[i]:
            cand &= nbr[colors[j]]
        if not cand:
            return 0
        if terminal[i]:
            s = mass(cand)
            return s if i == last else s * rec(i + 1)
        total = 0
        while cand:
            low = cand & -cand
            b = low.bit_length() - 1
            colors[i] = b
            cand ^= low
            total += weights[b] * rec(i + 1)
        return total

    if m + 50 > sys.getrecursionlimit():
        sys.setrecursionlimit(m + 100)
    return rec(0)


# -- canonical labeling --------------------------------------------------------


def _refine(colors, adj, n):
    """Coarsest equitable refinement; colors stay dense and label-invariant."""
    k = max(colors) + 1
    while True:
        cells = [0] * k
        for v in range(n):
            cells[colors[v]] |= 1 << v
        sig = [
            (colors[v],) + tuple((adj[v] & cm).bit_count() for cm in cells)
            for v in range(n)
        ]
        uniq = sorted(set(sig))
        if len(uniq) == k:
            return colors
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sig]
        k = len(uniq)


def _individualize(colors, v):
    raised = [2 * c + 1 for c in colors]
    raised[v] = 2 * colors[v]
    uniq = sorted(set(raised))
    rank = {c: i for i, c in enumerate(uniq)}
    return [rank[c] for c in raised]


def _leaf_key(adj, colors, n):
    inv = [0] * n
    for v, c in enumerate(colors):
        inv[c] = v
    key = 0
    for j in range(1, n):
        row = adj[inv[j]]
        for i in range(j):
            key = (key << 1) | (row >> inv[i] & 1)
    return key


def canonical_labeling(adj):
    """Return ``perm`` with ``perm[v]`` the canonical label of vertex ``v``.

    Individualization-refinement over equitable partitions, keeping the
    labeling whose upper-triangle bit string (graph6 order) is largest.
    Candidates in a target cell that are twins of an already explored
    candidate are skipped: swapping twins is an automorphism fixing the
    current node, so their subtrees produce identical keys.
    """
    n = len(adj)
    if n == 0:
        return []
    best = [-1, None]

    def search(colors):
        k = max(colors) + 1
        if k == n:
            key = _leaf_key(adj, colors, n)
            if key > best[0]:
                best[0] = key
                best[1] = colors
            return
        counts = [0] * k
        for c in colors:
            counts[c] += 1
        target = next(c for c in range(k) if counts[c] > 1)
        tried = []
        for v in range(n):
            if colors[v] != target:
                continue
            av = adj[v]
            if any((av & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in tried):
                continue
            tried.append(v)
            search(_refine(_individualize(colors, v), adj, n))

    search(_refine([0] * n, adj, n))
    return list(best[1])
