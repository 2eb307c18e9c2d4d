"""Exact maximization of hom(G, H) over families and bound verification.

Bounds with fractional exponents, ``a**(n/p)``, are never evaluated: two
terms ``a**(n/p)`` and ``b**(n/q)`` are ordered by ``a**q`` against
``b**p``, and ``a**(n/p)`` against an integer ``C`` by ``a**n`` against
``C**p``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .canon import canonical_form
from .classify import compute_n0, star_power_sum
from .errors import InvariantViolation, ParameterError
from .families import FamilySpec, enumerate_family, two_regular_graphs
from .graphs import SimpleGraph, TargetGraph, complete_bipartite, disjoint_union, star
from .hom import (
    Ordering,
    cmp_root_powers,
    compare,
    hom_brute,
    hom_complete,
    hom_complete_bipartite,
    hom_cycle,
    z_weighted,
)


def default_jobs() -> int:
    env = os.environ.get("HOMX_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterError(f"HOMX_JOBS must be an integer, got {env!r}") from None
    return 1


# -- evaluation -------------------------------------------------------------------


def _value(g: SimpleGraph, h: TargetGraph):
    return hom_brute(g, h) if h.is_unweighted else z_weighted(g, h)


def _evaluate_chunk(args):
    graphs, h = args
    return [(canonical_form(g), _value(g, h)) for g in graphs]


def iter_family_values(spec: FamilySpec, h: TargetGraph, jobs: int = 1):
    """Yield (canonical form, hom value) in family order, chunk by chunk."""
    graphs = list(enumerate_family(spec))
    if jobs <= 1 or len(graphs) < 64:
        for g in graphs:
            yield canonical_form(g), _value(g, h)
        return
    size = max(16, len(graphs) // (jobs * 4))
    chunks = [(graphs[i : i + size], h) for i in range(0, len(graphs), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_evaluate_chunk, chunks):
            yield from part


def evaluate_family(spec: FamilySpec, h: TargetGraph, jobs: int = 1) -> list[tuple[bytes, object]]:
    """(canonical form, hom value) for every family member, sorted by form."""
    return sorted(iter_family_values(spec, h, jobs), key=lambda r: r[0])


@dataclass(frozen=True)
class Argmax:
    max_value: object
    witnesses: tuple[bytes, ...]
    rows: tuple[tuple[bytes, object], ...] = field(repr=False, default=())


def argmax_hom(spec: FamilySpec, h: TargetGraph, jobs: int = 1) -> Argmax:
    """Exact maximum of hom(G, h) over the family and all maximizers."""
    rows = evaluate_family(spec, h, jobs)
    if not rows:
        raise ParameterError(f"family {spec.describe()} is empty")
    top = max(v for _, v in rows)
    return Argmax(top, tuple(k for k, v in rows if v == top), tuple(rows))


# -- the three-term bound -----------------------------------------------------------


@dataclass(frozen=True)
class BoundTerm:
    """``base ** (n / root)``, or the plain integer ``base`` when root is None."""

    name: str
    base: int
    root: Optional[int]

    def integral(self, n: int) -> bool:
        return self.root is None or n % self.root == 0

    def to_dict(self, n: int) -> dict:
        out = {"name": self.name, "base": str(self.base)}
        if self.root is None:
            out["value"] = str(self.base)
        else:
            out["exponent"] = f"{n}/{self.root}"
            out["integral"] = self.integral(n)
            if self.integral(n):
                out["value"] = str(self.base ** (n // self.root))
        return out


def cmp_terms(a: BoundTerm, b: BoundTerm, n: int) -> Ordering:
    if a.root is not None and b.root is not None:
        return cmp_root_powers(a.base, a.root, b.base, b.root)
    if a.root is None and b.root is None:
        return compare(a.base, b.base)
    if a.root is None:
        return Ordering(-cmp_terms(b, a, n))
    return compare(a.base**n, b.base**a.root)


def cmp_value_term(value, term: BoundTerm, n: int) -> Ordering:
    """Order an exact value (int or Fraction) against a bound term."""
    if term.root is None:
        return compare(value, term.base)
    value = Fraction(value)
    # value**p vs base**n, cleared of the value's denominator
    lhs = value.numerator**term.root
    rhs = term.base**n * value.denominator**term.root
    return compare(lhs, rhs)


@dataclass(frozen=True)
class Bound:
    n: int
    terms: tuple[BoundTerm, ...]
    attained_by: tuple[str, ...]  # names of the maximal terms

    @property
    def top(self) -> BoundTerm:
        return next(t for t in self.terms if t.name == self.attained_by[0])

    def to_dict(self) -> dict:
        return {
            "terms": [t.to_dict(self.n) for t in self.terms],
            "attained_by": list(self.attained_by),
        }


def _max_terms(terms, n):
    best = [terms[0]]
    for t in terms[1:]:
        o = cmp_terms(t, best[0], n)
        if o is Ordering.GREATER:
            best = [t]
        elif o is Ordering.EQUAL:
            best.append(t)
    return tuple(t.name for t in best)


def conjecture_bound(n: int, delta: int, h: TargetGraph, max_degree: Optional[int] = None) -> Bound:
    """The three conjectured extremal terms with an exact ordering.

    With ``max_degree`` D the complete-bipartite term is replaced by
    hom(K_{delta,D}, h) ** (n / (delta + D)).
    """
    if n <= delta:
        raise ParameterError(f"need n > delta, got n={n}, delta={delta}")
    if not h.is_unweighted:
        raise ParameterError("bounds are stated for unweighted targets")
    terms = [
        BoundTerm(f"K_{delta + 1}", hom_complete(delta + 1, h), delta + 1),
        BoundTerm(f"K_{delta},{delta}", hom_complete_bipartite(delta, delta, h, fallback=True), 2 * delta),
    ]
    if max_degree is None:
        terms.append(
            BoundTerm(f"K_{delta},{n - delta}", hom_complete_bipartite(delta, n - delta, h, fallback=True), None)
        )
    else:
        terms.append(
            BoundTerm(
                f"K_{delta},{max_degree}",
                hom_complete_bipartite(delta, max_degree, h, fallback=True),
                delta + max_degree,
            )
        )
    return Bound(n, tuple(terms), _max_terms(terms, n))


@dataclass
class SearchVerdict:
    family: dict
    max_value: object
    witnesses: tuple[bytes, ...]
    bound: Bound
    max_vs_bound: Ordering
    conjecture_holds: bool
    equality_graphs: tuple[bytes, ...]
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "max_value": str(self.max_value),
            "witnesses": [w.decode() for w in self.witnesses],
            "bound": self.bound.to_dict(),
            "max_vs_bound": self.max_vs_bound.symbol,
            "conjecture_holds": self.conjecture_holds,
            "equality_graphs": [w.decode() for w in self.equality_graphs],
            "notes": list(self.notes),
        }


def verify_conjecture(spec: FamilySpec, h: TargetGraph, jobs: int = 1) -> SearchVerdict:
    """Compare the family maximum against the three-term bound.

    A failed bound is reported as ``conjecture_holds = False``, not raised.
    """
    res = argmax_hom(spec, h, jobs)
    bound = conjecture_bound(spec.n, spec.delta, h, spec.max_degree)
    o = cmp_value_term(res.max_value, bound.top, spec.n)
    notes = []
    if not bound.top.integral(spec.n):
        notes.append(
            f"top term {bound.top.name} has exponent {spec.n}/{bound.top.root}; "
            "no graph can attain a non-integral power term"
        )
    if spec.max_degree is not None:
        notes.append(f"max-degree form: {bound.terms[2].name} term replaces K_{spec.delta},n-{spec.delta}")
    return SearchVerdict(
        family=spec.describe(),
        max_value=res.max_value,
        witnesses=res.witnesses,
        bound=bound,
        max_vs_bound=o,
        conjecture_holds=o is not Ordering.GREATER,
        equality_graphs=res.witnesses if o is Ordering.EQUAL else (),
        notes=notes,
    )


# -- 2-regular graphs -----------------------------------------------------------


@dataclass
class TwoRegularVerdict:
    n: int
    hom_c3: int
    hom_c4: int
    c3_vs_c4: Ordering
    values: list  # (cycle lengths, value)
    max_value: int
    bound_terms: tuple[str, ...]  # which of C3 / C4 powers is the bound
    equality: list  # cycle-length tuples attaining the bound

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "hom_C3": str(self.hom_c3),
            "hom_C4": str(self.hom_c4),
            "C3_vs_C4": self.c3_vs_c4.symbol,
            "bound_terms": list(self.bound_terms),
            "max_value": str(self.max_value),
            "values": [{"cycles": [str(k) for k in p], "value": str(v)} for p, v in self.values],
            "equality": [[str(k) for k in p] for p in self.equality],
        }


def verify_2regular(n: int, h: TargetGraph) -> TwoRegularVerdict:
    """Check every 2-regular graph on n vertices against the short-cycle bound.

    Raises InvariantViolation if a graph exceeds the bound or the set of
    graphs meeting it differs from the characterized one.
    """
    if n < 3:
        raise ParameterError(f"need n >= 3, got {n}")
    c3, c4 = hom_cycle(3, h), hom_cycle(4, h)
    t3, t4 = BoundTerm("C_3", c3, 3), BoundTerm("C_4", c4, 4)
    order = cmp_root_powers(c3, 3, c4, 4)
    top = t3 if order is not Ordering.LESS else t4
    names = ("C_3", "C_4") if order is Ordering.EQUAL else (top.name,)
    cyc_cache: dict[int, int] = {}
    values = []
    equality = []
    for parts, _ in two_regular_graphs(n):
        v = 1
        for k in parts:
            if k not in cyc_cache:
                cyc_cache[k] = hom_cycle(k, h)
            v *= cyc_cache[k]
        o = cmp_value_term(v, top, n)
        if o is Ordering.GREATER:
            raise InvariantViolation(
                f"2-regular graph with cycles {parts} has {v} colorings, above {top.name}^({n}/{top.root})"
            )
        if o is Ordering.EQUAL:
            equality.append(parts)
        values.append((parts, v))
    if not h.is_fully_looped_complete():
        if order is Ordering.GREATER:
            expected = [(3,) * (n // 3)] if n % 3 == 0 else []
        elif order is Ordering.LESS:
            expected = [(4,) * (n // 4)] if n % 4 == 0 else []
        else:
            expected = [p for p, _ in two_regular_graphs(n) if set(p) <= {3, 4}]
        if sorted(expected) != sorted(equality):
            raise InvariantViolation(
                f"equality set {equality} differs from the characterized set {expected} for n={n}"
            )
    return TwoRegularVerdict(
        n, c3, c4, order, values, max(v for _, v in values), names, equality
    )


# -- minimum degree 1 ---------------------------------------------------------------


def _star_forests(n: int, sizes: set[int]) -> list[tuple[int, ...]]:
    """Nondecreasing tuples of star vertex counts from ``sizes`` summing to n."""
    sizes = sorted(sizes)
    out = []

    def rec(left, lo, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for s in sizes:
            if s >= lo and s <= left:
                rec(left - s, s, acc + [s])

    rec(n, 0, [])
    return out


def _forest_key(parts) -> bytes:
    return canonical_form(disjoint_union(*(star(k) for k in parts)))


@dataclass
class MinDegree1Prediction:
    n: int
    bound: BoundTerm | tuple  # a term, or a pair of terms under a max-degree cap
    equality: list  # star-forest vertex-count tuples predicted to attain it
    case: str

    def keys(self) -> set[bytes]:
        return {_forest_key(p) for p in self.equality}


def predict_min_degree_1(n: int, h: TargetGraph, max_degree: Optional[int] = None) -> MinDegree1Prediction:
    """Extremal value and equality graphs over graphs of minimum degree 1.

    Without a degree cap: the perfect matching while the degree sum is at
    least Delta**2, otherwise the matching below the star threshold n0 and
    the star from n0 on, with the star also tying at n0 - 1 on the boundary.
    With cap D: the better of K_2 and K_{1,D} per vertex, and every forest
    of the optimal stars on a tie.
    """
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    if h.is_fully_looped_complete():
        raise ParameterError("every graph ties on a fully looped complete target")
    s = sum(h.degrees())
    big = h.max_degree()
    match = BoundTerm("K_2", s, 2)
    if max_degree is not None:
        d = max_degree
        starD = BoundTerm(f"K_1,{d}", star_power_sum(h, d + 1), d + 1)
        o = cmp_terms(match, starD, n) if d > 1 else Ordering.EQUAL
        sizes = {2} if o is Ordering.GREATER else {d + 1} if o is Ordering.LESS else {2, d + 1}
        return MinDegree1Prediction(n, (match, starD), _star_forests(n, sizes), f"max_degree_{d}")
    if s >= big * big:
        eq = [(2,) * (n // 2)] if n % 2 == 0 else []
        return MinDegree1Prediction(n, match, eq, "matching")
    n0, tie = compute_n0(h)
    if n < n0:
        eq = [(2,) * (n // 2)] if n % 2 == 0 else []
        if tie and n == n0 - 1 and (n,) not in eq:
            eq.append((n,))
        return MinDegree1Prediction(n, match, eq, "below_star_threshold")
    return MinDegree1Prediction(n, BoundTerm(f"K_1,{n - 1}", star_power_sum(h, n), None), [(n,)], "star")


@dataclass
class MinDegree1Verdict:
    n: int
    case: str
    max_value: int
    witnesses: tuple[bytes, ...]
    equality: tuple[bytes, ...]

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "case": self.case,
            "max_value": str(self.max_value),
            "witnesses": [w.decode() for w in self.witnesses],
            "equality": [w.decode() for w in self.equality],
        }


def verify_min_degree_1(
    n: int, h: TargetGraph, source: str = "generated_emc", max_degree: Optional[int] = None, jobs: int = 1
) -> MinDegree1Verdict:
    """Check the predicted bound and equality set over the family.

    Raises InvariantViolation on any disagreement.
    """
    pred = predict_min_degree_1(n, h, max_degree)
    spec = FamilySpec(n, 1, source, max_degree=max_degree)
    res = argmax_hom(spec, h, jobs)
    terms = pred.bound if isinstance(pred.bound, tuple) else (pred.bound,)
    top = terms[0]
    for t in terms[1:]:
        if cmp_terms(t, top, n) is Ordering.GREATER:
            top = t
    hits = []
    for key, v in res.rows:
        o = cmp_value_term(v, top, n)
        if o is Ordering.GREATER:
            raise InvariantViolation(f"n={n}: graph {key.decode()} has {v} colorings, above the bound {top.name}")
        if o is Ordering.EQUAL:
            hits.append(key)
    if set(hits) != pred.keys():
        raise InvariantViolation(
            f"n={n} ({pred.case}): equality graphs {sorted(k.decode() for k in hits)} differ from "
            f"predicted {sorted(k.decode() for k in pred.keys())}"
        )
    return MinDegree1Verdict(n, pred.case, res.max_value, res.witnesses, tuple(sorted(hits)))


# -- empirical threshold -------------------------------------------------------------


@dataclass
class EmpiricalThreshold:
    delta: int
    tested: list  # (n, max value, is K_{delta,n-delta} the unique maximizer)
    threshold: Optional[int]
    label: str = "empirical, not c_H"

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "label": self.label,
            "threshold": None if self.threshold is None else str(self.threshold),
            "tested": [
                {"n": str(n), "max_value": str(v), "complete_bipartite_unique": ok} for n, v, ok in self.tested
            ],
        }


def empirical_threshold(
    h: TargetGraph, n_values, delta: int = 2, source: str = "generated_emc", jobs: int = 1
) -> EmpiricalThreshold:
    """Least tested n from which K_{delta,n-delta} is the unique maximizer at
    every larger tested n."""
    tested = []
    for n in sorted(n_values):
        res = argmax_hom(FamilySpec(n, delta, source), h, jobs)
        target = canonical_form(complete_bipartite(delta, n - delta))
        tested.append((n, res.max_value, res.witnesses == (target,)))
    threshold = None
    for n, _, ok in reversed(tested):
        if not ok:
            break
        threshold = n
    return EmpiricalThreshold(delta, tested, threshold)


__all__ = [
    "Argmax",
    "Bound",
    "BoundTerm",
    "EmpiricalThreshold",
    "MinDegree1Prediction",
    "MinDegree1Verdict",
    "SearchVerdict",
    "TwoRegularVerdict",
    "argmax_hom",
    "cmp_terms",
    "cmp_value_term",
    "conjecture_bound",
    "default_jobs",
    "empirical_threshold",
    "evaluate_family",
    "iter_family_values",
    "predict_min_degree_1",
    "verify_2regular",
    "verify_conjecture",
    "verify_min_degree_1",
]
