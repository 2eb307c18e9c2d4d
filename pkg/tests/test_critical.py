import random

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, to_nx
from homx.canon import canonical_form, is_isomorphic
from homx.critical import (
    EarDecomposition,
    PathAddition,
    PendantAddition,
    decompose_delta2,
    generate_emc,
    is_edge_min_critical,
    matching_partition,
    maximum_matching,
    rebuild,
)
from homx.errors import ConstructionError, ParameterError, Unsupported
from homx.families import all_graphs
from homx.graphs import SimpleGraph, complete, complete_bipartite, cycle, disjoint_union, star
from homx.hom import hom_brute

BOWTIE = SimpleGraph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def brute_emc(n, delta):
    return {canonical_form(g) for g in all_graphs(n) if g.min_degree() == delta and is_edge_min_critical(g, delta)}


def partitions_min2(n, smallest=2):
    if n == 0:
        return 1
    return sum(partitions_min2(n - k, k) for k in range(smallest, n + 1))


# -- edge-min-criticality --------------------------------------------------------------


def test_emc_examples():
    assert is_edge_min_critical(cycle(5), 2)
    assert not is_edge_min_critical(complete(4).remove_edge(0, 1), 2)
    assert is_edge_min_critical(complete_bipartite(2, 3), 2)


def test_emc_precondition():
    with pytest.raises(ParameterError):
        is_edge_min_critical(cycle(5), 3)
    with pytest.raises(ParameterError):
        is_edge_min_critical(cycle(5), 0)


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=2, max_n=9))
def test_emc_matches_edge_deletion(g):
    d = g.min_degree()
    if d < 1:
        return
    expected = all(g.remove_edge(u, v).min_degree() < d for u, v in g.edges)
    assert is_edge_min_critical(g, d) == expected


# -- decomposition ----------------------------------------------------------------------


def test_decompose_k23():
    d = decompose_delta2(complete_bipartite(2, 3))
    assert [len(c) for c in d.base_cycles] == [4]
    assert d.path_additions == []
    assert len(d.pendant_additions) == 1
    assert sorted(d.pendant_additions[0].ends) == [0, 1]
    assert rebuild(d) == complete_bipartite(2, 3)


def test_decompose_bowtie():
    d = decompose_delta2(BOWTIE)
    assert [len(c) for c in d.base_cycles] == [3]
    assert len(d.path_additions) == 1
    p = d.path_additions[0]
    assert len(p.path) == 2 and p.ends == (0, 0)
    assert rebuild(d) == BOWTIE


def test_decompose_cycle():
    d = decompose_delta2(cycle(7))
    assert [len(c) for c in d.base_cycles] == [7]
    assert not d.path_additions and not d.pendant_additions


def test_rebuild_examples():
    k23 = rebuild(EarDecomposition([(0, 1, 2, 3)], [], [PendantAddition(4, (0, 2))]))
    assert is_isomorphic(k23, complete_bipartite(2, 3))
    assert is_isomorphic(rebuild(EarDecomposition([(0, 1, 2)], [PathAddition((3, 4), (0, 0))])), BOWTIE)
    assert rebuild(EarDecomposition([(0, 1, 2)])) == cycle(3)


@pytest.mark.parametrize(
    "d,needle",
    [
        (EarDecomposition([]), "base cycle"),
        (EarDecomposition([(0, 1)]), "base cycle 0"),
        (EarDecomposition([(0, 1, 2, 3)], [PathAddition((4, 5), (0, 1))]), "path addition 0"),
        (EarDecomposition([(0, 1, 2, 3)], [PathAddition((4,), (0, 2))]), "path addition 0"),
        (EarDecomposition([(0, 1, 2, 3)], [], [PendantAddition(4, (0, 1))]), "pendant addition 0"),
        (EarDecomposition([(0, 1, 2, 3)], [], [PendantAddition(4, (0, 0))]), "pendant addition 0"),
        (
            EarDecomposition([(0, 1, 2, 3)], [], [PendantAddition(4, (0, 2)), PendantAddition(5, (4, 1))]),
            "pendant addition 1",
        ),
    ],
)
def test_rebuild_rejects_bad_additions(d, needle):
    with pytest.raises(ConstructionError, match=needle):
        rebuild(d)


def test_decomposition_document_roundtrip():
    d = decompose_delta2(complete_bipartite(2, 4))
    assert EarDecomposition.from_dict(d.to_dict()) == d
    with pytest.raises(ConstructionError):
        EarDecomposition.from_dict({"path_additions": []})


@pytest.mark.slow
def test_roundtrip_all_generated_up_to_10():
    for n in range(3, 11):
        for g in generate_emc(n, 2):
            d = decompose_delta2(g)
            assert rebuild(d) == g
            assert is_isomorphic(rebuild(EarDecomposition.from_dict(d.to_dict())), g)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=3, max_n=9))
def test_decompose_random_emc(g):
    if g.min_degree() != 2 or not is_edge_min_critical(g, 2):
        return
    assert rebuild(decompose_delta2(g)) == g


# -- generation -------------------------------------------------------------------------------


def test_generate_examples():
    got = generate_emc(4, 1)
    assert {canonical_form(g) for g in got} == {canonical_form(star(4)), canonical_form(disjoint_union(complete(2), complete(2)))}
    got = generate_emc(5, 2)
    assert {canonical_form(g) for g in got} == {canonical_form(g) for g in (cycle(5), complete_bipartite(2, 3), BOWTIE)}
    assert [canonical_form(g) for g in generate_emc(3, 2)] == [canonical_form(cycle(3))]


def test_generate_errors():
    with pytest.raises(Unsupported):
        generate_emc(6, 3)
    with pytest.raises(ParameterError):
        generate_emc(2, 2)
    with pytest.raises(ParameterError):
        generate_emc(1, 1)


def test_generate_sound_and_distinct():
    for n in range(3, 12):
        gs = generate_emc(n, 2)
        assert len({canonical_form(g) for g in gs}) == len(gs)
        for g in gs:
            assert g.n == n and g.min_degree() == 2 and is_edge_min_critical(g, 2)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(3, 9))
def test_generate_complete_against_brute_delta2(n):
    assert {canonical_form(g) for g in generate_emc(n, 2)} == brute_emc(n, 2)


@pytest.mark.parametrize("n", range(2, 9))
def test_generate_complete_against_brute_delta1(n):
    assert {canonical_form(g) for g in generate_emc(n, 1)} == brute_emc(n, 1)


def test_delta1_counts_are_partitions():
    for n in range(2, 11):
        assert len(generate_emc(n, 1)) == partitions_min2(n)


@pytest.mark.slow
def test_maximizer_sufficiency(targets_q3):
    for delta in (1, 2):
        for n in range(delta + 1, 9):
            fam = [g for g in all_graphs(n) if g.min_degree() == delta]
            crit = generate_emc(n, delta)
            for h in targets_q3:
                assert max(hom_brute(g, h) for g in fam) == max(hom_brute(g, h) for g in crit)


# -- matchings ---------------------------------------------------------------------------------


def test_matching_examples():
    p = matching_partition(cycle(4))
    assert len(p.M) == 2 and not p.I
    p = matching_partition(star(5))
    assert len(p.M) == 1 and len(p.I) == 3 and p.J == {0}
    p = matching_partition(complete_bipartite(2, 3))
    assert len(p.M) == 2 and len(p.I) == 1


def test_matching_size_limit():
    with pytest.raises(ParameterError):
        maximum_matching(SimpleGraph(25))


def test_matching_partition_on_random_graphs():
    rng = random.Random(20261017)
    for _ in range(500):
        n = rng.randint(1, 12)
        p = rng.random()
        g = SimpleGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        part = matching_partition(g)
        assert len(part.M) == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
        assert all(g.has_edge(u, v) for u, v in part.M)
        assert len({v for e in part.M for v in e}) == 2 * len(part.M)
        imask = sum(1 << v for v in part.I)
        assert all(not g.adj[v] & imask for v in part.I)
        for u, v in part.M:
            du, dv = (g.adj[u] & imask).bit_count(), (g.adj[v] & imask).bit_count()
            assert not (du >= 2 and dv >= 2)
            if du >= 2:
                assert dv == 0
            if dv >= 2:
                assert du == 0
            j = u if u in part.J else v
            assert (g.adj[j] & imask).bit_count() == max(du, dv)
        both = sum(1 for w in part.I if any(g.has_edge(w, u) and g.has_edge(w, v) for u, v in part.M))
        assert both <= len(part.M)
        assert part.I | part.J | part.K == set(range(n))
