"""Graph families: all graphs up to isomorphism, generated edge-min-critical
families, and externally supplied graph6 streams, behind one spec type."""

from __future__ import annotations

import os
from itertools import permutations
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from .canon import canonical_form, canonical_graph
from .critical import cycle_partitions, generate_emc
from .errors import ParameterError
from .graphs import SimpleGraph, TargetGraph, cycle, disjoint_union
from .io import read_graph6_stream

ALL_GRAPHS_CAP = 8
SOURCES = ("generated_emc", "all_graphs_bruteforce", "graph6_stream")


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[SimpleGraph, ...]:
    if n == 0:
        return (SimpleGraph(0),)
    found: dict[bytes, SimpleGraph] = {}
    for g in _all_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            adj = list(g.adj) + [mask]
            for v in range(n - 1):
                if mask >> v & 1:
                    adj[v] |= 1 << (n - 1)
            h = SimpleGraph.from_masks(adj)
            key = canonical_form(h)
            if key not in found:
                found[key] = canonical_graph(h)
    return tuple(found[k] for k in sorted(found))


def all_graphs(n: int) -> list[SimpleGraph]:
    """Every graph on n vertices up to isomorphism, in canonical-form order."""
    if not 0 <= n <= ALL_GRAPHS_CAP:
        raise ParameterError(f"exhaustive enumeration supports 0 <= n <= {ALL_GRAPHS_CAP}, got {n}")
    return list(_all_graphs(n))


def two_regular_graphs(n: int) -> list[tuple[tuple[int, ...], SimpleGraph]]:
    """(cycle lengths, graph) for every 2-regular graph on n vertices."""
    return [(parts, disjoint_union(*(cycle(k) for k in parts))) for parts in cycle_partitions(n)]


@dataclass(frozen=True)
class FamilySpec:
    """Graphs on ``n`` vertices with minimum degree exactly ``delta``.

    ``max_degree``, ``regular`` and ``bipartite`` narrow the family further.
    For ``graph6_stream`` pass ``stream`` as a path or an iterable of lines.
    """

    n: int
    delta: int
    source: str = "generated_emc"
    max_degree: Optional[int] = None
    regular: Optional[int] = None
    bipartite: Optional[bool] = None
    stream: Union[str, os.PathLike, Iterable[str], None] = None

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ParameterError(f"unknown source {self.source!r}; expected one of {SOURCES}")
        if self.delta < 1:
            raise ParameterError(f"delta must be >= 1, got {self.delta}")
        if self.source != "graph6_stream" and self.n < self.delta + 1:
            raise ParameterError(f"need n >= delta + 1, got n={self.n}, delta={self.delta}")
        if self.source == "generated_emc" and self.delta not in (1, 2):
            raise ParameterError(
                f"generated_emc covers delta in {{1, 2}} only (got {self.delta}); "
                "use all_graphs_bruteforce or a graph6 stream"
            )
        if self.source == "all_graphs_bruteforce" and self.n > ALL_GRAPHS_CAP:
            raise ParameterError(f"all_graphs_bruteforce needs n <= {ALL_GRAPHS_CAP}, got {self.n}")
        if self.source == "graph6_stream" and self.stream is None:
            raise ParameterError("graph6_stream needs a stream")
        if self.max_degree is not None and self.max_degree < self.delta:
            raise ParameterError(f"max_degree {self.max_degree} < delta {self.delta}")

    def accepts(self, g: SimpleGraph) -> bool:
        if self.max_degree is not None and g.max_degree() > self.max_degree:
            return False
        if self.regular is not None and any(d != self.regular for d in g.degrees()):
            return False
        if self.bipartite is not None and g.is_bipartite() != self.bipartite:
            return False
        return True

    def describe(self) -> dict:
        out = {"n": str(self.n), "delta": str(self.delta), "source": self.source}
        if self.max_degree is not None:
            out["max_degree"] = str(self.max_degree)
        if self.regular is not None:
            out["regular"] = str(self.regular)
        if self.bipartite is not None:
            out["bipartite"] = self.bipartite
        return out


def _stream_lines(stream) -> Iterable[str]:
    if isinstance(stream, (str, os.PathLike)):
        with open(stream, encoding="ascii") as fh:
            yield from fh
    else:
        yield from stream


def enumerate_family(spec: FamilySpec) -> Iterator[SimpleGraph]:
    """Members of the family, pairwise non-isomorphic.

    Generated and brute-force sources yield canonical graphs in canonical
    order. A graph6 stream is yielded in input order with repeats dropped;
    a stream graph whose minimum degree is not ``delta`` is an error.
    """
    if spec.source == "generated_emc":
        for g in generate_emc(spec.n, spec.delta):
            if spec.accepts(g):
                yield g
        return
    if spec.source == "all_graphs_bruteforce":
        for g in all_graphs(spec.n):
            if g.min_degree() == spec.delta and spec.accepts(g):
                yield g
        return
    seen = set()
    for lineno, g in read_graph6_stream(_stream_lines(spec.stream), with_lines=True):
        if g.n != spec.n:
            raise ParameterError(f"line {lineno}: graph has {g.n} vertices, family has n={spec.n}")
        if g.min_degree() != spec.delta:
            raise ParameterError(
                f"line {lineno}: graph has minimum degree {g.min_degree()}, family needs {spec.delta}"
            )
        if not spec.accepts(g):
            continue
        key = canonical_form(g)
        if key in seen:
            continue
        seen.add(key)
        yield g


def _target_key(masks: tuple[int, ...], q: int) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(q)):
        rows = [0] * q
        for v in range(q):
            m = 0
            for w in range(q):
                if masks[v] >> w & 1:
                    m |= 1 << perm[w]
            rows[perm[v]] = m
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def all_targets(q: int, up_to_iso: bool = True) -> list[TargetGraph]:
    """Every target on q vertices (loops allowed, no isolated vertex).

    Without ``up_to_iso`` all labeled symmetric 0/1 matrices are returned
    (2**(q(q+1)/2) candidates before the isolated-vertex filter).
    """
    if not 1 <= q <= 5:
        raise ParameterError(f"target enumeration supports 1 <= q <= 5, got {q}")
    slots = [(i, j) for i in range(q) for j in range(i, q)]
    out = []
    seen = set()
    for bits in range(1 << len(slots)):
        masks = [0] * q
        for b, (i, j) in enumerate(slots):
            if bits >> b & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
        if not all(masks):
            continue
        if up_to_iso:
            key = _target_key(tuple(masks), q)
            if key in seen:
                continue
            seen.add(key)
        out.append(TargetGraph.from_masks(masks))
    return out
