import pytest

from homx.canon import canonical_form
from homx.classify import regime_delta2
from homx.errors import FormatError, InvariantViolation, ParameterError
from homx.families import FamilySpec, all_targets, enumerate_family
from homx.graphs import (
    TargetGraph,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    h_ind,
    h_wr,
    hard_core,
    looped_complete,
    star,
)
from homx.hom import Ordering
from homx.io import write_graph6
from homx.search import (
    argmax_hom,
    conjecture_bound,
    default_jobs,
    empirical_threshold,
    evaluate_family,
    verify_2regular,
    verify_conjecture,
    verify_min_degree_1,
)

K2 = TargetGraph.from_simple(complete(2))
K3 = TargetGraph.from_simple(complete(3))
TWO_LOOPS = disjoint_union(looped_complete(1), looped_complete(1))


def cf(g):
    return canonical_form(g)


def union(*gs):
    return disjoint_union(*gs)


def h_tie():
    return disjoint_union(*([looped_complete(1)] * 8 + [K2] * 4))


# -- families ---------------------------------------------------------------------


def test_family_examples():
    assert len(list(enumerate_family(FamilySpec(5, 2)))) == 3
    assert len(list(enumerate_family(FamilySpec(4, 1)))) == 2
    got = {cf(g) for g in enumerate_family(FamilySpec(6, 2, "all_graphs_bruteforce", regular=2))}
    assert got == {cf(cycle(6)), cf(union(cycle(3), cycle(3)))}


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=6, delta=3),
        dict(n=9, delta=2, source="all_graphs_bruteforce"),
        dict(n=2, delta=2),
        dict(n=6, delta=0),
        dict(n=6, delta=2, source="graph6_stream"),
        dict(n=6, delta=2, source="nope"),
        dict(n=6, delta=2, max_degree=1),
    ],
)
def test_family_capability_errors(kwargs):
    with pytest.raises(ParameterError):
        FamilySpec(**kwargs)


def test_graph6_stream_family(tmp_path):
    lines = [write_graph6(cycle(6)), write_graph6(cycle(6).relabel([1, 2, 3, 4, 5, 0])), write_graph6(complete_bipartite(2, 4))]
    got = list(enumerate_family(FamilySpec(6, 2, "graph6_stream", stream=lines)))
    assert [cf(g) for g in got] == [cf(cycle(6)), cf(complete_bipartite(2, 4))]
    p = tmp_path / "fam.g6"
    p.write_text("\n".join(lines) + "\n")
    assert len(list(enumerate_family(FamilySpec(6, 2, "graph6_stream", stream=str(p))))) == 2


def test_graph6_stream_errors():
    with pytest.raises(FormatError) as exc:
        list(enumerate_family(FamilySpec(6, 2, "graph6_stream", stream=[write_graph6(cycle(6)), "E!!"])))
    assert exc.value.line == 2
    with pytest.raises(ParameterError, match="line 1"):
        list(enumerate_family(FamilySpec(6, 2, "graph6_stream", stream=[write_graph6(cycle(5))])))
    with pytest.raises(ParameterError, match="minimum degree"):
        list(enumerate_family(FamilySpec(6, 2, "graph6_stream", stream=[write_graph6(star(6))])))


# -- argmax ---------------------------------------------------------------------------


def test_argmax_examples():
    r = argmax_hom(FamilySpec(8, 2), h_ind())
    assert r.max_value == 67 and r.witnesses == (cf(complete_bipartite(2, 6)),)
    r = argmax_hom(FamilySpec(12, 2), TWO_LOOPS)
    assert r.max_value == 16 and r.witnesses == (cf(union(*[cycle(3)] * 4)),)
    r = argmax_hom(FamilySpec(12, 2), K3)
    assert r.max_value == 5832 and r.witnesses == (cf(union(*[cycle(4)] * 3)),)


def test_argmax_witnesses_sorted():
    r = argmax_hom(FamilySpec(7, 2), looped_complete(2))
    assert list(r.witnesses) == sorted(r.witnesses)
    assert len(r.witnesses) == len(list(enumerate_family(FamilySpec(7, 2))))


def test_argmax_empty_family():
    with pytest.raises(ParameterError):
        argmax_hom(FamilySpec(6, 2, "all_graphs_bruteforce", regular=3, bipartite=False, max_degree=2), h_ind())


# -- bounds ------------------------------------------------------------------------------


def test_bound_examples():
    b = conjecture_bound(12, 2, h_ind())
    assert [t.base for t in b.terms] == [4, 7, 1027]
    assert [t.base ** (12 // t.root) if t.root else t.base for t in b.terms] == [256, 343, 1027]
    assert b.attained_by == ("K_2,10",)
    b = conjecture_bound(12, 2, K3)
    assert b.attained_by == ("K_2,2",) and b.top.base**3 == 5832
    for q in (1, 2, 3):
        b = conjecture_bound(9, 2, looped_complete(q))
        assert len(b.attained_by) == 3
    with pytest.raises(ParameterError):
        conjecture_bound(2, 2, h_ind())


def test_bound_non_integral_exponent_is_noted():
    v = verify_conjecture(FamilySpec(7, 2), K3)
    assert v.conjecture_holds
    assert any("non-integral" in s for s in v.notes)


def test_verify_examples():
    v = verify_conjecture(FamilySpec(8, 2), h_ind())
    assert v.conjecture_holds and v.equality_graphs == (cf(complete_bipartite(2, 6)),)
    v = verify_conjecture(FamilySpec(12, 1, max_degree=3), h_ind())
    assert v.conjecture_holds and v.max_value == 729 and v.max_vs_bound is Ordering.EQUAL
    k13, k2 = star(4), complete(2)
    expected = {cf(union(*[k13] * 3)), cf(union(*[k2] * 6)), cf(union(k13, k13, k2, k2)), cf(union(k13, *[k2] * 4))}
    assert set(v.equality_graphs) == expected
    v = verify_conjecture(FamilySpec(6, 2, "all_graphs_bruteforce"), TWO_LOOPS)
    assert v.conjecture_holds and v.max_value == 4
    assert v.equality_graphs == (cf(union(cycle(3), cycle(3))),)


def test_verdict_document():
    d = verify_conjecture(FamilySpec(6, 2), h_ind()).to_dict()
    assert d["max_value"] == "19" and d["conjecture_holds"] is True
    assert d["bound"]["attained_by"] == ["K_2,4"]


# -- 2-regular ----------------------------------------------------------------------------


def test_2regular_examples():
    v = verify_2regular(12, K3)
    assert v.max_value == 5832 and v.equality == [(4, 4, 4)]
    v = verify_2regular(12, h_tie())
    assert sorted(v.equality) == [(3, 3, 3, 3), (4, 4, 4)]
    assert v.bound_terms == ("C_3", "C_4")
    for q in (1, 2, 3):
        v = verify_2regular(7, looped_complete(q))
        assert {val for _, val in v.values} == {q**7}
    with pytest.raises(ParameterError):
        verify_2regular(2, K3)


def test_2regular_mixtures_tie():
    v = verify_2regular(11, h_tie())
    assert sorted(v.equality) == [(3, 4, 4)]
    v = verify_2regular(24, h_tie())
    assert sorted(v.equality) == [(3,) * 8, (3, 3, 3, 3, 4, 4, 4), (4,) * 6]


@pytest.mark.slow
def test_2regular_all_small_targets(targets_q3):
    for h in targets_q3:
        for n in range(3, 16):
            verify_2regular(n, h)


# -- minimum degree 1 ----------------------------------------------------------------------


def test_min_degree_1_examples():
    assert verify_min_degree_1(4, h_ind()).case == "below_star_threshold"
    v = verify_min_degree_1(4, h_ind(), source="all_graphs_bruteforce")
    assert set(v.equality) == {cf(star(4)), cf(union(complete(2), complete(2)))}
    v = verify_min_degree_1(7, h_ind(), source="all_graphs_bruteforce")
    assert v.case == "star" and v.equality == (cf(star(7)),)
    v = verify_min_degree_1(6, K2, source="all_graphs_bruteforce")
    assert v.case == "matching" and v.max_value == 8


@pytest.mark.slow
def test_min_degree_1_all_small_targets(targets_q3):
    for h in targets_q3:
        if h.is_fully_looped_complete():
            continue
        for n in range(2, 11):
            src = "all_graphs_bruteforce" if n <= 8 else "generated_emc"
            verify_min_degree_1(n, h, source=src)


# -- the bipartite regime at minimum degree 2 -----------------------------------------------


def _unique_bipartite_failures(h, delta, n_values):
    bad = []
    for n in n_values:
        src = "generated_emc" if delta <= 2 else "all_graphs_bruteforce"
        r = argmax_hom(FamilySpec(n, delta, src), h)
        if r.witnesses != (cf(complete_bipartite(delta, n - delta)),):
            bad.append((n, str(r.max_value), [w.decode() for w in r.witnesses]))
    return bad


@pytest.mark.slow
def test_bipartite_regime_unique_maximizer(targets_q3):
    bad = {}
    for h in targets_q3:
        if regime_delta2(h).regime != "bipartite":
            continue
        fails = _unique_bipartite_failures(h, 2, range(6, 10))
        if fails:
            bad[h.inline()] = fails
    assert not bad, bad


@pytest.mark.slow
@pytest.mark.parametrize("name,h", [("H_WR", h_wr()), ("H(2)", hard_core(2))])
@pytest.mark.parametrize("delta,n_values", [(2, range(4, 10)), (3, range(6, 9))])
def test_degree_sum_targets_maximizer(name, h, delta, n_values):
    assert _unique_bipartite_failures(h, delta, n_values) == []


def test_empirical_threshold_label():
    t = empirical_threshold(h_ind(), range(5, 10))
    assert t.label == "empirical, not c_H"
    assert t.threshold is not None and t.threshold <= 6
    assert t.to_dict()["label"] == "empirical, not c_H"


# -- parallelism ------------------------------------------------------------------------------


def test_parallel_evaluation_is_deterministic():
    spec = FamilySpec(10, 2)
    one = evaluate_family(spec, h_wr(), jobs=1)
    four = evaluate_family(spec, h_wr(), jobs=4)
    assert one == four
    assert argmax_hom(spec, h_wr(), jobs=1) == argmax_hom(spec, h_wr(), jobs=3)


def test_default_jobs_env(monkeypatch):
    monkeypatch.delenv("HOMX_JOBS", raising=False)
    assert default_jobs() == 1
    monkeypatch.setenv("HOMX_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("HOMX_JOBS", "x")
    with pytest.raises(ParameterError):
        default_jobs()


def test_weighted_targets_use_exact_rationals():
    from fractions import Fraction

    h = h_ind().with_weights([1, Fraction(1, 2)])
    r = argmax_hom(FamilySpec(5, 2), h)
    assert isinstance(r.max_value, Fraction)
