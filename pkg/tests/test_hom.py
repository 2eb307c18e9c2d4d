import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, naive_hom, targets
from homx.canon import canonical_form
from homx.errors import ParameterError, ResourceError
from homx.families import all_targets
from homx.graphs import (
    SimpleGraph,
    TargetGraph,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    h_ind,
    h_wr,
    looped_complete,
    path,
    star,
)
from homx.hom import (
    Ordering,
    cmp_powers,
    cmp_root_powers,
    hom_brute,
    hom_complete,
    hom_complete_bipartite,
    hom_cycle,
    hom_path_pinned,
    hom_star,
    z_star,
    z_weighted,
)

K2 = TargetGraph.from_simple(complete(2))
K3 = TargetGraph.from_simple(complete(3))


def h_tie():
    return disjoint_union(*([looped_complete(1)] * 8 + [K2] * 4))


@pytest.fixture(scope="module")
def small_targets():
    return [h for q in (1, 2, 3, 4) for h in all_targets(q)]


# -- examples -----------------------------------------------------------------------


def test_brute_examples(backend):
    assert hom_brute(complete(2), h_ind()) == 3
    assert hom_brute(cycle(4), K2) == 2
    assert hom_brute(cycle(3), h_wr()) == 15
    assert hom_brute(SimpleGraph(0), K3) == 1


@pytest.mark.parametrize("q", [1, 2, 3])
@pytest.mark.parametrize("g", [cycle(5), star(4), complete(4), SimpleGraph(3)], ids=str)
def test_looped_clique_counts_every_map(backend, g, q):
    assert hom_brute(g, looped_complete(q)) == q**g.n


def test_brute_against_naive_on_fixed_cases():
    for g in (cycle(3), complete_bipartite(2, 3), path(5)):
        for h in (h_ind(), h_wr(), K3):
            assert hom_brute(g, h) == naive_hom(g, h)


def test_weighted_examples():
    assert z_weighted(complete(2), h_ind().with_weights([1, 2])) == 8
    h = h_wr().with_weights([Fraction(1, 3), 2, 5])
    assert z_weighted(SimpleGraph(1), h) == Fraction(1, 3) + 2 + 5
    assert z_weighted(cycle(5), h_wr()) == hom_brute(cycle(5), h_wr())
    assert isinstance(z_weighted(cycle(5), h_wr()), Fraction)


def test_star_examples():
    assert hom_star(4, h_ind()) == 9 == hom_brute(star(4), h_ind())
    assert hom_star(2, h_ind()) == 3
    assert hom_star(6, looped_complete(3)) == 3**6
    with pytest.raises(ParameterError):
        hom_star(1, h_ind())


def test_cycle_examples():
    assert hom_cycle(3, h_ind()) == 4
    assert hom_cycle(4, h_ind()) == 7
    assert hom_cycle(3, h_tie()) == 8
    assert hom_cycle(4, h_tie()) == 16
    with pytest.raises(ParameterError):
        hom_cycle(2, h_ind())


def test_pinned_path_examples():
    for h in (h_ind(), h_wr(), K3):
        for u in range(h.q):
            for v in range(h.q):
                assert hom_path_pinned(2, h, u, v) == (h.adj[u] >> v & 1)
    assert hom_path_pinned(4, h_ind(), 1, 1) == 3  # w is the looped vertex
    assert all(hom_path_pinned(4, looped_complete(2), u, v) == 4 for u in range(2) for v in range(2))
    with pytest.raises(ParameterError):
        hom_path_pinned(4, h_ind(), 0, 2)
    with pytest.raises(ParameterError):
        hom_path_pinned(1, h_ind(), 0, 0)


def test_pinned_path_against_enumeration():
    for h in (h_ind(), h_wr()):
        for u, v in itertools.product(range(h.q), repeat=2):
            walks = sum(
                1
                for mid in itertools.product(range(h.q), repeat=3)
                if all(h.adj[a] >> b & 1 for a, b in zip((u,) + mid, mid + (v,)))
            )
            assert hom_path_pinned(5, h, u, v) == walks


def test_complete_bipartite_examples():
    assert hom_complete_bipartite(2, 4, h_ind()) == 19
    assert hom_complete_bipartite(2, 2, K2) == 2 == hom_cycle(4, K2)
    for x in range(2, 7):
        assert hom_complete_bipartite(1, x - 1, h_wr()) == hom_star(x, h_wr())
    with pytest.raises(ResourceError):
        hom_complete_bipartite(7, 2, h_ind())
    with pytest.warns(UserWarning):
        assert hom_complete_bipartite(7, 2, h_ind(), fallback=True) == hom_brute(complete_bipartite(7, 2), h_ind())
    with pytest.raises(ParameterError):
        hom_complete_bipartite(0, 2, h_ind())


def test_complete_examples(small_targets):
    assert hom_complete(3, K3) == 6
    assert hom_complete(3, h_ind()) == 4
    for h in small_targets:
        assert hom_complete(2, h) == sum(h.degrees())
    assert hom_complete(0, h_ind()) == 1
    assert hom_complete(4, K3) == 0


def test_root_power_examples():
    assert cmp_root_powers(4, 3, 13, 4) is Ordering.LESS
    assert cmp_root_powers(8, 3, 16, 4) is Ordering.EQUAL
    assert cmp_root_powers(13, 4, 4, 3) is Ordering.GREATER
    assert cmp_root_powers(97, 5, 97, 5) is Ordering.EQUAL
    assert cmp_powers(2, Fraction(1, 2), 3, Fraction(1, 3)) is Ordering.LESS
    with pytest.raises(ParameterError):
        cmp_root_powers(2, 0, 3, 1)


# -- invariants ------------------------------------------------------------------------------


def named_small():
    out = [star(x) for x in range(2, 10)]
    out += [cycle(k) for k in range(3, 10)]
    out += [path(k) for k in range(2, 10)]
    out += [complete_bipartite(a, b) for a in range(1, 5) for b in range(a, 10 - a)]
    out += [complete(k) for k in range(1, 6)]
    return out


@pytest.mark.slow
def test_closed_forms_match_brute(small_targets):
    for h in small_targets:
        for x in range(2, 10):
            assert hom_star(x, h) == hom_brute(star(x), h)
        for k in range(3, 10):
            assert hom_cycle(k, h) == hom_brute(cycle(k), h)
        for k in range(2, 10):
            assert sum(hom_path_pinned(k, h, u, v) for u in range(h.q) for v in range(h.q)) == hom_brute(path(k), h)
        for a in range(1, 5):
            for b in range(a, 10 - a):
                assert hom_complete_bipartite(a, b, h) == hom_brute(complete_bipartite(a, b), h)
        for k in range(1, 6):
            assert hom_complete(k, h) == hom_brute(complete(k), h)


def test_cycle_trace_matches_eigenvalues(small_targets):
    for h in small_targets:
        ev = np.linalg.eigvalsh(np.array(h.rows(), dtype=float))
        for k in range(3, 8):
            assert abs(float(np.sum(ev**k)) - hom_cycle(k, h)) < 1e-6 * max(1, hom_cycle(k, h))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6), targets(max_q=3))
def test_brute_matches_naive(g, h):
    assert hom_brute(g, h) == naive_hom(g, h)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=5), graphs(max_n=5), targets(max_q=4))
def test_multiplicative_over_disjoint_union(g1, g2, h):
    assert hom_brute(disjoint_union(g1, g2), h) == hom_brute(g1, h) * hom_brute(g2, h)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=7), targets(max_q=3), targets(max_q=3))
def test_additive_over_target_components(g, h1, h2):
    from homx.canon import connected_components

    if len(connected_components(g)) != 1:
        return
    assert hom_brute(g, disjoint_union(h1, h2)) == hom_brute(g, h1) + hom_brute(g, h2)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=7), targets(max_q=4))
def test_removing_an_edge_never_decreases(g, h):
    base = hom_brute(g, h)
    for u, v in g.edges:
        assert base <= hom_brute(g.remove_edge(u, v), h)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_weighted_consistency(data):
    h = data.draw(targets(max_q=3))
    g = data.draw(graphs(max_n=6))
    assert z_weighted(g, h) == hom_brute(g, h)
    ws = data.draw(st.lists(st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=6), min_size=h.q, max_size=h.q))
    hw = h.with_weights(ws)
    for x in range(2, 6):
        expected = sum((hw.weights[v] * hw.weighted_degree(v) ** (x - 1) for v in range(h.q)), Fraction(0))
        assert z_weighted(star(x), hw) == expected == z_star(x, hw)


def bipartite_regular(n):
    """Every d-regular bipartite graph on n vertices, up to isomorphism."""
    if n % 2:
        return []
    m = n // 2
    found = {}
    for d in range(1, m + 1):
        rows = [r for r in itertools.combinations(range(m), d)]
        for choice in itertools.product(rows, repeat=m):
            if any(sum(j in r for r in choice) != d for j in range(m)):
                continue
            g = SimpleGraph(n, [(i, m + j) for i, r in enumerate(choice) for j in r])
            found.setdefault(canonical_form(g), (d, g))
    return list(found.values())


@pytest.mark.slow
def test_bipartite_regular_bound():
    hs = [h for q in (1, 2, 3) for h in all_targets(q)]
    for n in range(2, 11, 2):
        for d, g in bipartite_regular(n):
            kdd = complete_bipartite(d, d)
            for h in hs:
                assert cmp_root_powers(hom_brute(g, h), n, hom_brute(kdd, h), 2 * d) is not Ordering.GREATER
