"""Edge-min-critical graphs: testing, the thread decomposition at minimum
degree 2, the matching generator, and the maximum-matching partition.

A graph is edge-min-critical for delta when its minimum degree is delta and
every edge deletion lowers the minimum degree, i.e. every edge has an
endpoint of degree exactly delta.

At minimum degree 2 the vertices of degree >= 3 form an independent set and
the degree-2 vertices split into *threads*: maximal paths of degree-2
vertices. Every such graph is either a disjoint union of cycles or has a
thread whose removal leaves a graph that is again edge-min-critical with
minimum degree 2. Reversing the stripping gives a construction: disjoint
cycles, then paths on k >= 2 new vertices glued at their ends, then single
vertices glued to two distinct non-adjacent vertices, all at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .canon import canonical_form, canonical_graph
from .errors import ConstructionError, InvariantViolation, ParameterError, Unsupported
from .graphs import SimpleGraph, cycle, disjoint_union, star


def is_edge_min_critical(g: SimpleGraph, delta: int) -> bool:
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    if g.n == 0 or g.min_degree() != delta:
        raise ParameterError(
            f"graph has minimum degree {g.min_degree() if g.n else None}, expected {delta}"
        )
    deg = g.degrees()
    return all(deg[u] == delta or deg[v] == delta for u, v in g.edges)


def _is_emc2(g: SimpleGraph) -> bool:
    deg = g.degrees()
    return min(deg) == 2 and all(deg[u] == 2 or deg[v] == 2 for u, v in g.edges)


# -- decomposition --------------------------------------------------------------


@dataclass(frozen=True)
class PathAddition:
    """New vertices ``path`` (in order); path[0] ~ ends[0], path[-1] ~ ends[1]."""

    path: tuple[int, ...]
    ends: tuple[int, int]


@dataclass(frozen=True)
class PendantAddition:
    vertex: int
    ends: tuple[int, int]


@dataclass
class EarDecomposition:
    base_cycles: list[tuple[int, ...]]
    path_additions: list[PathAddition] = field(default_factory=list)
    pendant_additions: list[PendantAddition] = field(default_factory=list)

    @property
    def n(self) -> int:
        return (
            sum(len(c) for c in self.base_cycles)
            + sum(len(p.path) for p in self.path_additions)
            + len(self.pendant_additions)
        )

    def to_dict(self) -> dict:
        return {
            "base_cycles": [list(c) for c in self.base_cycles],
            "path_additions": [
                {"path": list(p.path), "ends": list(p.ends)} for p in self.path_additions
            ],
            "pendant_additions": [
                {"vertex": p.vertex, "ends": list(p.ends)} for p in self.pendant_additions
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "EarDecomposition":
        try:
            return cls(
                [tuple(int(v) for v in c) for c in doc["base_cycles"]],
                [
                    PathAddition(tuple(int(v) for v in p["path"]), (int(p["ends"][0]), int(p["ends"][1])))
                    for p in doc.get("path_additions", [])
                ],
                [
                    PendantAddition(int(p["vertex"]), (int(p["ends"][0]), int(p["ends"][1])))
                    for p in doc.get("pendant_additions", [])
                ],
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ConstructionError(f"malformed decomposition document: {exc}") from exc


def rebuild(d: EarDecomposition) -> SimpleGraph:
    """Build the graph described by ``d``, checking every attachment rule."""
    if not d.base_cycles:
        raise ConstructionError("decomposition needs at least one base cycle")
    n = d.n
    adj = [0] * n
    present = 0

    def fresh(v, what):
        nonlocal present
        if not 0 <= v < n:
            raise ConstructionError(f"{what}: vertex {v} outside 0..{n - 1}")
        if present >> v & 1:
            raise ConstructionError(f"{what}: vertex {v} used twice")
        present |= 1 << v

    def link(u, v):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    for i, cyc in enumerate(d.base_cycles):
        if len(cyc) < 3:
            raise ConstructionError(f"base cycle {i} has length {len(cyc)} < 3")
        for v in cyc:
            fresh(v, f"base cycle {i}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            link(a, b)

    for i, p in enumerate(d.path_additions):
        what = f"path addition {i}"
        if len(p.path) < 2:
            raise ConstructionError(f"{what}: paths need k >= 2 vertices, got {len(p.path)}")
        x, y = p.ends
        for e in (x, y):
            if not (0 <= e < n and present >> e & 1):
                raise ConstructionError(f"{what}: attachment {e} does not exist yet")
        if x != y and adj[x] >> y & 1:
            raise ConstructionError(f"{what}: attachments {x} and {y} are adjacent")
        for v in p.path:
            fresh(v, what)
        for a, b in zip(p.path, p.path[1:]):
            link(a, b)
        link(x, p.path[0])
        link(y, p.path[-1])

    before = present
    for i, p in enumerate(d.pendant_additions):
        what = f"pendant addition {i}"
        x, y = p.ends
        for e in (x, y):
            if not (0 <= e < n and before >> e & 1):
                raise ConstructionError(f"{what}: attachment {e} is not a pre-pendant vertex")
        if x == y:
            raise ConstructionError(f"{what}: attachments must be distinct")
        if adj[x] >> y & 1:
            raise ConstructionError(f"{what}: attachments {x} and {y} are adjacent")
        fresh(p.vertex, what)
        link(x, p.vertex)
        link(y, p.vertex)
    return SimpleGraph.from_masks(adj)


def _threads(adj: dict[int, int], deg: dict[int, int]):
    """Maximal degree-2 paths ending next to vertices of degree >= 3.

    Yields ``(path, x, y)`` with path[0] ~ x and path[-1] ~ y. Components
    that are plain cycles are skipped.
    """
    seen = set()
    for s in sorted(adj):
        if deg[s] != 2 or s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in _bits(adj[v]):
                if deg[w] == 2 and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        ends = [v for v in comp if any(deg[w] != 2 for w in _bits(adj[v]))]
        if not ends:
            continue
        a = min(ends)
        path = [a]
        prev = None
        while True:
            inner = [w for w in _bits(adj[path[-1]]) if w in comp and w != prev]
            if not inner:
                break
            prev = path[-1]
            path.append(inner[0])
        outer_a = [w for w in _bits(adj[a]) if w not in comp]
        outer_b = [w for w in _bits(adj[path[-1]]) if w not in comp]
        if len(path) == 1:
            x, y = sorted(outer_a)
        else:
            (x,), (y,) = outer_a, outer_b
        yield tuple(path), x, y


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def decompose_delta2(g: SimpleGraph) -> EarDecomposition:
    """Strip threads until only disjoint cycles remain; record the reverse.

    Among valid threads the one with the smallest sorted attachment pair
    (then smallest vertex tuple) is taken. Single-vertex threads are
    recorded as pendant additions; they are never attachment points of a
    later thread, so moving them to the end of the construction is sound.
    """
    if g.n == 0 or g.min_degree() != 2 or not _is_emc2(g):
        raise ParameterError("decompose_delta2 needs an edge-min-critical graph of minimum degree 2")
    adj = {v: g.adj[v] for v in range(g.n)}
    paths: list[PathAddition] = []
    pendants: list[PendantAddition] = []
    while True:
        deg = {v: m.bit_count() for v, m in adj.items()}
        if all(d == 2 for d in deg.values()):
            break
        best = None
        for path, x, y in _threads(adj, deg):
            if x == y:
                if deg[x] < 4:
                    continue
            elif adj[x] >> y & 1:
                continue
            key = (min(x, y), max(x, y), tuple(sorted(path)))
            if best is None or key < best[0]:
                best = (key, path, x, y)
        if best is None:
            raise InvariantViolation(
                "no strippable thread in an edge-min-critical graph that is not a union of cycles"
            )
        _, path, x, y = best
        mask = 0
        for v in path:
            mask |= 1 << v
            del adj[v]
        for v in adj:
            adj[v] &= ~mask
        if len(path) == 1:
            pendants.append(PendantAddition(path[0], (min(x, y), max(x, y))))
        else:
            paths.append(PathAddition(path, (x, y)))
        if any(m.bit_count() < 2 for m in adj.values()):
            raise InvariantViolation("stripping a thread left a vertex of degree < 2")

    cycles = []
    left = set(adj)
    while left:
        s = min(left)
        cyc = [s]
        prev, cur = None, s
        while True:
            w = min(u for u in _bits(adj[cur]) if u != prev and (u != s or len(cyc) > 2))
            if w == s:
                break
            cyc.append(w)
            prev, cur = cur, w
        left.difference_update(cyc)
        cycles.append(tuple(cyc))
    return EarDecomposition(cycles, paths[::-1], pendants[::-1])


# -- generation -------------------------------------------------------------------


def _partitions(n: int, smallest: int):
    """Nondecreasing integer partitions of n into parts >= smallest."""
    if n == 0:
        yield ()
        return
    for p in range(smallest, n + 1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def cycle_partitions(n: int) -> list[tuple[int, ...]]:
    return list(_partitions(n, 3))


def _two_regular(parts) -> SimpleGraph:
    return disjoint_union(*(cycle(k) for k in parts))


def _add_path(g: SimpleGraph, k: int, x: int, y: int) -> SimpleGraph:
    n = g.n
    adj = list(g.adj) + [0] * k
    new = list(range(n, n + k))
    for a, b in zip(new, new[1:]):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    adj[x] |= 1 << new[0]
    adj[new[0]] |= 1 << x
    adj[y] |= 1 << new[-1]
    adj[new[-1]] |= 1 << y
    return SimpleGraph.from_masks(adj)


def _high_mask(g: SimpleGraph) -> int:
    high = 0
    for v in range(g.n):
        if g.degree(v) >= 3:
            high |= 1 << v
    return high


@lru_cache(maxsize=None)
def _threaded(m: int) -> tuple[SimpleGraph, ...]:
    """Canonical edge-min-critical graphs on m vertices built without pendants."""
    if m < 3:
        return ()
    found: dict[bytes, SimpleGraph] = {}
    for parts in cycle_partitions(m):
        g = canonical_graph(_two_regular(parts))
        found.setdefault(canonical_form(g), g)
    for k in range(2, m - 2):
        for base in _threaded(m - k):
            high = _high_mask(base)
            for x in range(base.n):
                for y in range(x, base.n):
                    # x and y rise to degree >= 3: their neighbors must stay at 2
                    if (base.adj[x] | base.adj[y]) & (high | (1 << x) | (1 << y)):
                        continue
                    g = _add_path(base, k, x, y)
                    if not _is_emc2(g):
                        continue
                    key = canonical_form(g)
                    if key not in found:
                        found[key] = canonical_graph(g)
    return tuple(found[k] for k in sorted(found))


def _with_pendants(base: SimpleGraph, p: int, out: dict[bytes, SimpleGraph]) -> None:
    """Add p pendant vertices at distinct non-adjacent pairs, keep emc results."""
    high = _high_mask(base)
    # attachments together with the degree->=3 vertices must stay independent
    pairs = [
        (x, y)
        for x, y in combinations(range(base.n), 2)
        if not base.adj[x] >> y & 1
        and not (base.adj[x] | base.adj[y]) & high
    ]
    n0 = base.n

    def rec(start, chosen, attached):
        if len(chosen) == p:
            adj = list(base.adj) + [0] * p
            for i, (x, y) in enumerate(chosen):
                v = n0 + i
                adj[v] = (1 << x) | (1 << y)
                adj[x] |= 1 << v
                adj[y] |= 1 << v
            g = SimpleGraph.from_masks(adj)
            if _is_emc2(g):
                key = canonical_form(g)
                if key not in out:
                    out[key] = canonical_graph(g)
            return
        for i in range(start, len(pairs)):
            x, y = pairs[i]
            touched = attached | (1 << x) | (1 << y)
            if (base.adj[x] | base.adj[y]) & touched:
                continue
            rec(i, chosen + [(x, y)], touched)

    rec(0, [], 0)


@lru_cache(maxsize=None)
def _emc2(n: int) -> tuple[SimpleGraph, ...]:
    out: dict[bytes, SimpleGraph] = {}
    for p in range(0, n - 2):
        for base in _threaded(n - p):
            if p == 0:
                out.setdefault(canonical_form(base), base)
            else:
                _with_pendants(base, p, out)
    return tuple(out[k] for k in sorted(out))


def generate_emc(n: int, delta: int) -> list[SimpleGraph]:
    """All edge-min-critical graphs on n vertices for delta, up to isomorphism.

    Output is in canonical-form order.
    """
    if delta not in (1, 2):
        raise Unsupported(
            f"edge-min-critical generation is implemented for delta in {{1, 2}} only, got {delta}"
        )
    if n < delta + 1:
        raise ParameterError(f"need n >= delta + 1 = {delta + 1}, got {n}")
    if delta == 1:
        graphs = [canonical_graph(disjoint_union(*(star(k) for k in parts))) for parts in _partitions(n, 2)]
        return sorted(graphs, key=canonical_form)
    return list(_emc2(n))


# -- matching partition -------------------------------------------------------------


@dataclass(frozen=True)
class MatchingPartition:
    M: tuple[tuple[int, int], ...]
    I: frozenset
    J: frozenset
    K: frozenset

    def to_dict(self) -> dict:
        return {
            "M": [list(e) for e in self.M],
            "I": sorted(self.I),
            "J": sorted(self.J),
            "K": sorted(self.K),
        }


def maximum_matching(g: SimpleGraph) -> list[tuple[int, int]]:
    """A maximum matching by memoized search over vertex subsets."""
    if g.n > 24:
        raise ParameterError(f"exhaustive matching is limited to 24 vertices, got {g.n}")

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        top = best(rest)
        for u in _bits(g.adj[v] & rest):
            top = max(top, 1 + best(rest & ~(1 << u)))
        return top

    out = []
    mask = (1 << g.n) - 1
    while mask:
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        target = best(mask)
        if best(rest) == target:
            mask = rest
            continue
        for u in _bits(g.adj[v] & rest):
            if 1 + best(rest & ~(1 << u)) == target:
                out.append((v, u))
                mask = rest & ~(1 << u)
                break
    return out


def matching_partition(g: SimpleGraph) -> MatchingPartition:
    """Split V(g) by a maximum matching M into unmatched I and endpoints J, K.

    J takes the endpoint with more neighbors in I (the lower id on ties).
    """
    m = maximum_matching(g)
    matched = 0
    for u, v in m:
        matched |= (1 << u) | (1 << v)
    imask = ((1 << g.n) - 1) & ~matched
    for v in _bits(imask):
        if g.adj[v] & imask:
            raise InvariantViolation(f"unmatched vertex {v} has an unmatched neighbor")
    jset, kset = set(), set()
    double = 0
    for u, v in m:
        du = (g.adj[u] & imask).bit_count()
        dv = (g.adj[v] & imask).bit_count()
        if (du >= 2 and dv > 0) or (dv >= 2 and du > 0):
            raise InvariantViolation(f"matched edge {(u, v)} admits an augmenting path")
        double |= g.adj[u] & g.adj[v] & imask
        j, k = (u, v) if (du, -u) > (dv, -v) else (v, u)
        jset.add(j)
        kset.add(k)
    if double.bit_count() > len(m):
        raise InvariantViolation("more unmatched vertices see both ends of a matched edge than |M|")
    return MatchingPartition(
        tuple((min(u, v), max(u, v)) for u, v in sorted(m)),
        frozenset(_bits(imask)),
        frozenset(jset),
        frozenset(kset),
    )
