import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from homx import canon, kernels
from homx.families import all_targets
from homx.graphs import SimpleGraph, TargetGraph


@pytest.fixture(params=["python", "compiled"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    mod = kernels.python_backend if request.param == "python" else kernels.compiled_backend
    if mod is None:
        pytest.skip("compiled extension not built")
    monkeypatch.setattr(kernels, "active", mod)
    canon.canonical_graph.cache_clear()
    yield request.param
    canon.canonical_graph.cache_clear()


@pytest.fixture(scope="session")
def targets_q3():
    return [h for q in (1, 2, 3) for h in all_targets(q)]


@pytest.fixture(scope="session")
def targets_q4_labeled():
    return [h for q in (1, 2, 3, 4) for h in all_targets(q, up_to_iso=False)]


def to_nx(g: SimpleGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def naive_hom(g: SimpleGraph, h: TargetGraph) -> int:
    """Count maps by trying every assignment."""
    return sum(
        1
        for f in itertools.product(range(h.q), repeat=g.n)
        if all(h.adj[f[u]] >> f[v] & 1 for u, v in g.edges)
    )


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return SimpleGraph(n, chosen)


@st.composite
def targets(draw, max_q=4):
    q = draw(st.integers(1, max_q))
    masks = [0] * q
    for i in range(q):
        for j in range(i, q):
            if draw(st.booleans()):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    for i in range(q):
        if not masks[i]:
            masks[i] |= 1 << i
    return TargetGraph.from_masks(masks)


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))
