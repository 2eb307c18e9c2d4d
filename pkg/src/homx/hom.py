"""Exact homomorphism counts.

``hom_brute`` is the general backtracking counter; the remaining counts are
closed forms for named source graphs and serve as independent checks on it.
All arithmetic is exact: counts are Python ints, weighted partition
functions are :class:`fractions.Fraction`. Nothing here uses floats.
"""

from __future__ import annotations

import enum
import warnings
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import kernels
from .canon import connected_components
from .errors import ParameterError, ResourceError
from .graphs import SimpleGraph, TargetGraph

__all__ = [
    "Ordering",
    "compare",
    "cmp_powers",
    "cmp_root_powers",
    "hom_brute",
    "z_weighted",
    "hom_star",
    "z_star",
    "hom_cycle",
    "hom_path_pinned",
    "hom_complete_bipartite",
    "hom_complete",
    "adjacency_matrix",
    "matrix_power",
    "BIPARTITE_CAP",
]

BIPARTITE_CAP = 6


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @property
    def symbol(self) -> str:
        return {-1: "<", 0: "=", 1: ">"}[self.value]

    def __str__(self):
        return self.name.lower()


def compare(x, y) -> Ordering:
    return Ordering((x > y) - (x < y))


def cmp_powers(a: int, e1: Fraction, b: int, e2: Fraction) -> Ordering:
    """Order ``a**e1`` against ``b**e2`` for nonnegative ints and exponents.

    Both sides are raised to the common denominator, so the comparison is
    between plain integer powers.
    """
    e1 = Fraction(e1)
    e2 = Fraction(e2)
    if a < 0 or b < 0 or e1 < 0 or e2 < 0:
        raise ParameterError("cmp_powers needs nonnegative bases and exponents")
    return compare(a ** (e1.numerator * e2.denominator), b ** (e2.numerator * e1.denominator))


def cmp_root_powers(a: int, p: int, b: int, q: int) -> Ordering:
    """Order ``a**(1/p)`` against ``b**(1/q)`` via ``a**q`` vs ``b**p``."""
    if p < 1 or q < 1:
        raise ParameterError(f"root indices must be positive, got {p}, {q}")
    return compare(a**q, b**p)


# -- backtracking --------------------------------------------------------------


def _component_plan(g: SimpleGraph, comp: list[int]):
    """Order ``comp`` by descending degree with connected expansion."""
    deg = g.degrees()
    members = 0
    for v in comp:
        members |= 1 << v
    order = []
    placed = 0
    while len(order) < len(comp):
        frontier = 0
        for v in order:
            frontier |= g.adj[v]
        frontier &= members & ~placed
        pool = frontier if frontier else members & ~placed
        best = None
        best_key = None
        m = pool
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            key = (deg[v], (g.adj[v] & placed).bit_count(), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed |= 1 << best
    pos = {v: i for i, v in enumerate(order)}
    prev = []
    terminal = []
    for i, v in enumerate(order):
        nb = [pos[w] for w in g.neighbors(v)]
        prev.append(tuple(sorted(j for j in nb if j < i)))
        terminal.append(all(j < i for j in nb))
    return tuple(prev), tuple(terminal)


@lru_cache(maxsize=1 << 15)
def _plan(g: SimpleGraph):
    return tuple(_component_plan(g, comp) for comp in connected_components(g))


def hom_brute(g: SimpleGraph, h: TargetGraph) -> int:
    """Number of adjacency-preserving maps V(g) -> V(h).

    Components are counted separately and multiplied.
    """
    total = 1
    for prev, terminal in _plan(g):
        c = kernels.count_homs(prev, terminal, h.adj, h.q)
        if c == 0:
            return 0
        total *= c
    return total


def _integer_weights(h: TargetGraph) -> tuple[list[int], int]:
    den = lcm(*(w.denominator for w in h.weights))
    return [int(w * den) for w in h.weights], den


def z_weighted(g: SimpleGraph, h: TargetGraph) -> Fraction:
    """Sum over homomorphisms f of the product of weights of f's colors."""
    ints, den = _integer_weights(h)
    total = 1
    for prev, terminal in _plan(g):
        c = kernels.weighted_homs(prev, terminal, h.adj, ints)
        if c == 0:
            return Fraction(0)
        total *= c
    return Fraction(total, den**g.n)


# -- closed forms ---------------------------------------------------------------


def hom_star(x: int, h: TargetGraph) -> int:
    """hom(K_{1,x-1}, h) = sum of d(v)**(x-1)."""
    if x < 2:
        raise ParameterError(f"star needs x >= 2 vertices, got {x}")
    return sum(d ** (x - 1) for d in h.degrees())


def z_star(x: int, h: TargetGraph) -> Fraction:
    """Weighted star: sum of weight(v) * weighted_degree(v)**(x-1)."""
    if x < 2:
        raise ParameterError(f"star needs x >= 2 vertices, got {x}")
    return sum(
        (h.weights[v] * h.weighted_degree(v) ** (x - 1) for v in range(h.q)),
        Fraction(0),
    )


def adjacency_matrix(h: TargetGraph) -> list[list[int]]:
    return h.rows()


def _matmul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(a[i], bt[j])) for j in range(n)] for i in range(n)]


def matrix_power(a: list[list[int]], k: int) -> list[list[int]]:
    """Exact integer power by repeated squaring."""
    n = len(a)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = a
    while k:
        if k & 1:
            result = _matmul(result, base)
        k >>= 1
        if k:
            base = _matmul(base, base)
    return result


def hom_cycle(k: int, h: TargetGraph) -> int:
    """hom(C_k, h) as the trace of the k-th adjacency power."""
    if k < 3:
        raise ParameterError(f"cycle needs k >= 3, got {k}")
    p = matrix_power(adjacency_matrix(h), k)
    return sum(p[i][i] for i in range(h.q))


def hom_path_pinned(k: int, h: TargetGraph, u: int, v: int) -> int:
    """Colorings of the k-vertex path with first vertex -> u and last -> v."""
    if k < 2:
        raise ParameterError(f"pinned path needs k >= 2 vertices, got {k}")
    if not (0 <= u < h.q and 0 <= v < h.q):
        raise ParameterError(f"endpoint colors ({u}, {v}) out of range for q={h.q}")
    return matrix_power(adjacency_matrix(h), k - 1)[u][v]


def _common_neighborhood_counts(h: TargetGraph, a: int) -> dict[int, int]:
    """Map common-neighborhood mask -> number of a-tuples producing it."""
    counts = {(1 << h.q) - 1: 1}
    for _ in range(a):
        nxt: dict[int, int] = {}
        for mask, c in counts.items():
            for v in range(h.q):
                m = mask & h.adj[v]
                nxt[m] = nxt.get(m, 0) + c
        counts = nxt
    return counts


def hom_complete_bipartite(
    a: int, b: int, h: TargetGraph, cap: int = BIPARTITE_CAP, fallback: bool = False
) -> int:
    """hom(K_{a,b}, h): sum over a-tuples of |common neighborhood|**b.

    ``a`` above ``cap`` raises :class:`ResourceError` unless ``fallback`` is
    set, in which case the backtracking counter is used with a warning.
    """
    if a < 1 or b < 1:
        raise ParameterError(f"complete bipartite graph needs a, b >= 1, got {a}, {b}")
    if a > cap:
        if not fallback:
            raise ResourceError(
                f"a={a} exceeds the tuple-sum cap {cap}; use hom_brute on "
                f"complete_bipartite({a}, {b}) instead"
            )
        from .graphs import complete_bipartite

        warnings.warn(f"a={a} over cap {cap}; falling back to backtracking", stacklevel=2)
        return hom_brute(complete_bipartite(a, b), h)
    return sum(c * mask.bit_count() ** b for mask, c in _common_neighborhood_counts(h, a).items())


def hom_complete(k: int, h: TargetGraph) -> int:
    """Number of k-tuples of pairwise adjacent vertices (repeats need loops)."""
    if k < 0:
        raise ParameterError(f"clique size must be nonnegative, got {k}")

    @lru_cache(maxsize=None)
    def count(cand: int, r: int) -> int:
        if r == 0:
            return 1
        total = 0
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            total += count(cand & h.adj[v], r - 1)
        return total

    return count((1 << h.q) - 1, k)
