"""Graph values used throughout the package.

:class:`SimpleGraph` is the loopless source graph ``G``; :class:`TargetGraph`
is the target ``H``, which may carry loops and positive rational vertex
weights. Both store adjacency as one integer bitmask per vertex and are
immutable after construction.

Degrees follow the convention that a loop counts once: the degree of a
target vertex is the number of distinct vertices it is adjacent to,
itself included when looped.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParameterError

__all__ = [
    "SimpleGraph",
    "TargetGraph",
    "complete",
    "complete_bipartite",
    "cycle",
    "path",
    "star",
    "empty",
    "disjoint_union",
    "looped_complete",
    "h_ind",
    "h_wr",
    "hard_core",
    "make_family",
    "degree",
    "min_degree",
    "max_degree",
    "weighted_degree",
    "max_weighted_degree",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SimpleGraph:
    """Loopless undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ParameterError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"loop at vertex {u}: source graphs are loopless")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "SimpleGraph":
        """Build from neighbor bitmasks without re-validating symmetry."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", len(masks))
        object.__setattr__(g, "adj", tuple(masks))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={list(self.edges)})"

    def __reduce__(self):
        return (SimpleGraph.from_masks, (self.adj,))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v
        )

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def remove_edge(self, u: int, v: int) -> "SimpleGraph":
        if not self.has_edge(u, v):
            raise ParameterError(f"({u}, {v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return SimpleGraph.from_masks(adj)

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        adj = [0] * self.n
        for u in range(self.n):
            pu = perm[u]
            for v in _bits(self.adj[u]):
                adj[pu] |= 1 << perm[v]
        return SimpleGraph.from_masks(adj)

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        """Induced subgraph, renumbered in the given vertex order."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for v, i in index.items():
            for w in _bits(self.adj[v]):
                j = index.get(w)
                if j is not None:
                    adj[i] |= 1 << j
        return SimpleGraph.from_masks(adj)

    def is_bipartite(self) -> bool:
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in _bits(self.adj[v]):
                    if side[w] < 0:
                        side[w] = 1 - side[v]
                        stack.append(w)
                    elif side[w] == side[v]:
                        return False
        return True


class TargetGraph:
    """Undirected graph with optional loops and positive rational weights.

    ``adj[v]`` is the neighbor bitmask of ``v``; bit ``v`` is set iff ``v``
    is looped. Every vertex must have at least one neighbor.
    """

    __slots__ = ("q", "adj", "weights")

    def __init__(
        self,
        rows: Sequence[Sequence[int]] | Sequence[str],
        weights: Sequence | None = None,
    ):
        q = len(rows)
        if q < 1:
            raise ParameterError("target graph needs at least one vertex")
        matrix = []
        for i, row in enumerate(rows):
            if len(row) != q:
                raise ParameterError(f"row {i} has length {len(row)}, expected {q}")
            vals = []
            for ch in row:
                if ch in (0, 1, "0", "1", False, True):
                    vals.append(int(ch))
                else:
                    raise ParameterError(f"row {i}: adjacency entries must be 0/1, got {ch!r}")
            matrix.append(vals)
        adj = []
        for i in range(q):
            mask = 0
            for j in range(q):
                if matrix[i][j] != matrix[j][i]:
                    raise ParameterError(f"adjacency not symmetric at ({i}, {j})")
                if matrix[i][j]:
                    mask |= 1 << j
            adj.append(mask)
        self._init(tuple(adj), weights)

    def _init(self, adj, weights):
        q = len(adj)
        for v, m in enumerate(adj):
            if m == 0:
                raise ParameterError(f"vertex {v} is isolated; targets must have none")
        if weights is None:
            w = (Fraction(1),) * q
        else:
            if len(weights) != q:
                raise ParameterError(f"expected {q} weights, got {len(weights)}")
            w = tuple(Fraction(x) for x in weights)
            for v, x in enumerate(w):
                if x <= 0:
                    raise ParameterError(f"weight of vertex {v} must be positive, got {x}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_masks(cls, masks: Sequence[int], weights=None) -> "TargetGraph":
        h = object.__new__(cls)
        h._init(tuple(masks), weights)
        return h

    @classmethod
    def parse_inline(cls, text: str, weights=None) -> "TargetGraph":
        """Parse the compact ``rows joined by '/'`` form, e.g. ``"01/11"``."""
        rows = [r.strip() for r in text.strip().split("/")]
        return cls(rows, weights)

    @classmethod
    def from_simple(cls, g: SimpleGraph, weights=None) -> "TargetGraph":
        return cls.from_masks(g.adj, weights)

    def __setattr__(self, name, value):
        raise AttributeError("TargetGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, TargetGraph):
            return NotImplemented
        return self.adj == other.adj and self.weights == other.weights

    def __hash__(self):
        return hash((self.adj, self.weights))

    def __reduce__(self):
        return (TargetGraph.from_masks, (self.adj, self.weights))

    def __repr__(self):
        extra = "" if self.is_unweighted else f", weights={[str(w) for w in self.weights]}"
        return f"TargetGraph({self.inline()!r}{extra})"

    def inline(self) -> str:
        return "/".join(
            "".join("1" if self.adj[i] >> j & 1 else "0" for j in range(self.q))
            for i in range(self.q)
        )

    def rows(self) -> list[list[int]]:
        return [[self.adj[i] >> j & 1 for j in range(self.q)] for i in range(self.q)]

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.weights)

    def with_weights(self, weights) -> "TargetGraph":
        return TargetGraph.from_masks(self.adj, weights)

    def has_loop(self, v: int) -> bool:
        return bool(self.adj[v] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        if not 0 <= v < self.q:
            raise ParameterError(f"vertex {v} out of range for q={self.q}")
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees())

    def num_loops(self) -> int:
        return sum(1 for v in range(self.q) if self.has_loop(v))

    def num_edges(self) -> int:
        """Non-loop edges."""
        return (sum(self.degrees()) - self.num_loops()) // 2

    def weighted_degree(self, v: int) -> Fraction:
        return sum((self.weights[w] for w in _bits(self.adj[v])), Fraction(0))

    def max_weighted_degree(self) -> Fraction:
        return max(self.weighted_degree(v) for v in range(self.q))

    def components(self) -> list[list[int]]:
        seen = 0
        out = []
        for s in range(self.q):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append(list(_bits(comp)))
        return out

    def induced(self, vertices: Sequence[int]) -> "TargetGraph":
        index = {v: i for i, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for v, i in index.items():
            for w in _bits(self.adj[v]):
                j = index.get(w)
                if j is not None:
                    adj[i] |= 1 << j
        return TargetGraph.from_masks(adj, [self.weights[v] for v in vertices])

    def is_fully_looped_complete(self) -> bool:
        """True iff this is K_q with a loop at every vertex."""
        full = (1 << self.q) - 1
        return all(m == full for m in self.adj)


# -- named graphs -----------------------------------------------------------


def empty(n: int) -> SimpleGraph:
    return SimpleGraph(n)


def complete(n: int) -> SimpleGraph:
    if n < 1:
        raise ParameterError(f"complete graph needs n >= 1, got {n}")
    return SimpleGraph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    """K_{a,b}; vertices ``0..a-1`` form the first class."""
    if a < 1 or b < 1:
        raise ParameterError(f"complete bipartite graph needs a, b >= 1, got {a}, {b}")
    return SimpleGraph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def cycle(n: int) -> SimpleGraph:
    """C_n with vertices in walk order."""
    if n < 3:
        raise ParameterError(f"cycle needs n >= 3, got {n}")
    return SimpleGraph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> SimpleGraph:
    """Path on ``n`` vertices in walk order."""
    if n < 1:
        raise ParameterError(f"path needs n >= 1, got {n}")
    return SimpleGraph(n, ((i, i + 1) for i in range(n - 1)))


def star(n: int) -> SimpleGraph:
    """K_{1,n-1}: the star on ``n`` vertices, center 0."""
    if n < 2:
        raise ParameterError(f"star needs n >= 2 vertices, got {n}")
    return SimpleGraph(n, ((0, i) for i in range(1, n)))


def disjoint_union(*graphs):
    """Disjoint union, relabelled consecutively in argument order.

    Works for source graphs and for target graphs (weights are kept).
    """
    if not graphs:
        raise ParameterError("disjoint_union needs at least one graph")
    kinds = {type(g) for g in graphs}
    if len(kinds) != 1:
        raise ParameterError("cannot mix source and target graphs in a union")
    masks = []
    offset = 0
    weights = []
    for g in graphs:
        masks.extend(m << offset for m in g.adj)
        size = g.n if isinstance(g, SimpleGraph) else g.q
        if isinstance(g, TargetGraph):
            weights.extend(g.weights)
        offset += size
    if kinds == {SimpleGraph}:
        return SimpleGraph.from_masks(masks)
    return TargetGraph.from_masks(masks, weights)


def looped_complete(q: int) -> TargetGraph:
    if q < 1:
        raise ParameterError(f"looped complete graph needs q >= 1, got {q}")
    return TargetGraph.from_masks([(1 << q) - 1] * q)


def h_ind() -> TargetGraph:
    """Edge with one looped endpoint: vertex 0 unlooped, vertex 1 looped."""
    return TargetGraph.parse_inline("01/11")


def h_wr() -> TargetGraph:
    """Fully looped path a-b-c; the middle vertex is 1."""
    return TargetGraph.parse_inline("110/111/011")


def hard_core(k: int) -> TargetGraph:
    """H(k) on ``{0..k}`` with ``i ~ j`` iff ``i + j <= k``."""
    if k < 1:
        raise ParameterError(f"hard-core graph needs k >= 1, got {k}")
    return TargetGraph(
        [[1 if i + j <= k else 0 for j in range(k + 1)] for i in range(k + 1)]
    )


_FAMILIES = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "cycle": cycle,
    "path": path,
    "star": star,
    "empty": empty,
    "disjoint_union": disjoint_union,
    "looped_complete": looped_complete,
    "H_ind": h_ind,
    "H_WR": h_wr,
    "hard_core_k": hard_core,
}


def make_family(kind: str, *params):
    """Construct a named graph, e.g. ``make_family("cycle", 5)``."""
    try:
        ctor = _FAMILIES[kind]
    except KeyError:
        raise ParameterError(
            f"unknown family {kind!r}; expected one of {sorted(_FAMILIES)}"
        ) from None
    try:
        return ctor(*params)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {kind}: {exc}") from None


# -- degree helpers over either graph kind ----------------------------------


def degree(g, v: int) -> int:
    return g.degree(v)


def min_degree(g) -> int:
    return g.min_degree()


def max_degree(g) -> int:
    return g.max_degree()


def weighted_degree(h: TargetGraph, v: int) -> Fraction:
    return h.weighted_degree(v)


def max_weighted_degree(h: TargetGraph) -> Fraction:
    return h.max_weighted_degree()
