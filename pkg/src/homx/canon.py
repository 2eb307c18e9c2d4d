"""Canonical forms, isomorphism tests and connected components.

The canonical form of a graph is the graph6 encoding (as bytes) of a
canonical relabeling: components are labeled independently by the
individualization-refinement kernel, sorted by (size, encoding) and
concatenated. Two graphs get equal keys iff they are isomorphic.
"""

from __future__ import annotations

from functools import lru_cache

from . import kernels
from .graphs import SimpleGraph, disjoint_union
from .io import write_graph6


def connected_components(g: SimpleGraph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by least vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= g.adj[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append([v for v in range(g.n) if comp >> v & 1])
    return out


def _canonical_component(sub: SimpleGraph) -> SimpleGraph:
    return sub.relabel(kernels.canonical_labeling(sub.adj))


@lru_cache(maxsize=1 << 16)
def canonical_graph(g: SimpleGraph) -> SimpleGraph:
    """A fixed representative of the isomorphism class of ``g``."""
    comps = connected_components(g)
    if len(comps) <= 1:
        return _canonical_component(g) if g.n else g
    parts = []
    for comp in comps:
        c = _canonical_component(g.induced(comp))
        parts.append((c.n, write_graph6(c), c))
    parts.sort(key=lambda t: (t[0], t[1]))
    return disjoint_union(*(c for _, _, c in parts))


def canonical_form(g: SimpleGraph) -> bytes:
    return write_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)
