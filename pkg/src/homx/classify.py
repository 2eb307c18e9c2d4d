"""Classify a target graph H into its extremal regime.

Every verdict is decided by exact integer comparison. The only float-valued
outputs are the informational constant ``C_H`` and the long-path threshold
from :func:`path_threshold`, which is marked approximate and carries exact
spot checks.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Optional

import numpy as np

from .errors import InvariantViolation, RegimeError, ResourceError
from .graphs import TargetGraph
from .hom import (
    Ordering,
    cmp_root_powers,
    compare,
    hom_complete,
    hom_complete_bipartite,
    hom_cycle,
    matrix_power,
)

N0_ITERATION_CAP = 10_000
S_DELTA_CAP = 6


@dataclass(frozen=True)
class Comparison:
    """One exact (or approximate) comparison, kept for the report ledger."""

    label: str
    lhs: int | float
    rhs: int | float
    op: Ordering
    exact: bool = True

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "op": self.op.symbol,
            "exact": self.exact,
        }


def _cmp(label, lhs, rhs) -> Comparison:
    return Comparison(label, lhs, rhs, compare(lhs, rhs))


def degree_condition(h: TargetGraph) -> Ordering:
    """Order sum of degrees against the squared max degree."""
    return compare(sum(h.degrees()), h.max_degree() ** 2)


def star_power_sum(h: TargetGraph, x: int) -> int:
    """sum of d(v)**(x-1), i.e. hom(K_{1,x-1}, h)."""
    return sum(d ** (x - 1) for d in h.degrees())


def compute_n0(h: TargetGraph) -> tuple[int, bool]:
    """Smallest n0 >= 3 where the star on n0 vertices beats the matching.

    Decided as ``S**n0 < (sum d**(n0-1))**2`` with ``S`` the degree sum.
    ``boundary_equality`` reports the tie ``S**(n0-1) == (sum d**(n0-2))**2``,
    where the star on ``n0 - 1`` vertices ties the perfect matching.
    """
    s = sum(h.degrees())
    delta = h.max_degree()
    if s >= delta * delta:
        raise RegimeError(
            f"degree sum {s} >= max degree squared {delta * delta}: the perfect "
            "matching maximizes for every n, so no star threshold exists"
        )
    for x in range(3, N0_ITERATION_CAP + 1):
        if s**x < star_power_sum(h, x) ** 2:
            return x, s ** (x - 1) == star_power_sum(h, x - 1) ** 2
    raise InvariantViolation(f"no star threshold found below {N0_ITERATION_CAP}")


@dataclass(frozen=True)
class Delta2Verdict:
    regime: str  # "cycles" or "bipartite"
    hom_c3: int
    hom_c4: int
    c3_vs_delta: Ordering
    c4_vs_delta: Ordering
    c3_vs_c4: Ordering  # hom(C3)**(1/3) against hom(C4)**(1/4)

    @property
    def dominant(self) -> str:
        return {Ordering.GREATER: "C3", Ordering.LESS: "C4", Ordering.EQUAL: "tie"}[self.c3_vs_c4]

    def comparisons(self, delta: int) -> list[Comparison]:
        return [
            Comparison("hom(C3) vs Delta^3", self.hom_c3, delta**3, self.c3_vs_delta),
            Comparison("hom(C4) vs Delta^4", self.hom_c4, delta**4, self.c4_vs_delta),
            Comparison("hom(C3)^4 vs hom(C4)^3", self.hom_c3**4, self.hom_c4**3, self.c3_vs_c4),
        ]


def regime_delta2(h: TargetGraph) -> Delta2Verdict:
    """Cycles regime if a short cycle's normalized count reaches Delta.

    A tie with Delta is classified as the cycles regime.
    """
    delta = h.max_degree()
    c3 = hom_cycle(3, h)
    c4 = hom_cycle(4, h)
    o3 = compare(c3, delta**3)
    o4 = compare(c4, delta**4)
    regime = "bipartite" if o3 is Ordering.LESS and o4 is Ordering.LESS else "cycles"
    return Delta2Verdict(regime, c3, c4, o3, o4, cmp_root_powers(c3, 3, c4, 4))


def s_delta(h: TargetGraph, delta: int, enumerate: bool = False, cap: int = S_DELTA_CAP):
    """Count delta-tuples of vertices whose common neighborhood has size Delta.

    With ``enumerate=True`` returns ``(count, sorted list of tuples)``.
    """
    if delta < 1:
        raise RegimeError(f"delta must be >= 1, got {delta}")
    if delta > cap:
        raise ResourceError(f"delta={delta} exceeds the tuple cap {cap}")
    big = h.max_degree()
    full = (1 << h.q) - 1
    if not enumerate:
        counts = {full: 1}
        for _ in range(delta):
            nxt: dict[int, int] = {}
            for mask, c in counts.items():
                for v in range(h.q):
                    m = mask & h.adj[v]
                    nxt[m] = nxt.get(m, 0) + c
            counts = nxt
        return sum(c for m, c in counts.items() if m.bit_count() == big)
    found = []
    for t in product(range(h.q), repeat=delta):
        m = full
        for v in t:
            m &= h.adj[v]
        if m.bit_count() == big:
            found.append(t)
    return len(found), found


@dataclass(frozen=True)
class StructureFlags:
    has_K_Delta_loop_component: bool
    has_K_DeltaDelta_component: bool
    looped_dominating_vertex: bool
    unique_max_degree_vertex: bool
    shared_max_degree_neighborhoods: bool
    is_K_Delta_loop: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _is_looped_clique(h: TargetGraph, comp: list[int]) -> bool:
    mask = sum(1 << v for v in comp)
    return all(h.adj[v] == mask for v in comp)


def _is_complete_bipartite_balanced(h: TargetGraph, comp: list[int], size: int) -> bool:
    if len(comp) != 2 * size or any(h.has_loop(v) for v in comp):
        return False
    side = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for w in h.neighbors(v):
            if w not in side:
                side[w] = 1 - side[v]
                stack.append(w)
            elif side[w] == side[v]:
                return False
    left = sum(1 << v for v in comp if side[v] == 0)
    right = sum(1 << v for v in comp if side[v] == 1)
    if left.bit_count() != size or right.bit_count() != size:
        return False
    return all(h.adj[v] == (right if side[v] == 0 else left) for v in comp)


def structure_flags(h: TargetGraph) -> StructureFlags:
    big = h.max_degree()
    comps = h.components()
    full = (1 << h.q) - 1
    tops = [v for v in range(h.q) if h.degree(v) == big]
    return StructureFlags(
        has_K_Delta_loop_component=any(
            len(c) == big and _is_looped_clique(h, c) for c in comps
        ),
        has_K_DeltaDelta_component=any(
            _is_complete_bipartite_balanced(h, c, big) for c in comps
        ),
        looped_dominating_vertex=any(h.adj[v] == full for v in range(h.q)),
        unique_max_degree_vertex=len(tops) == 1,
        shared_max_degree_neighborhoods=len({h.adj[v] for v in tops}) == 1,
        is_K_Delta_loop=h.q == big and h.is_fully_looped_complete(),
    )


@dataclass(frozen=True)
class StarProfile:
    """Direction of f(x) = hom(K_{1,x-1})**(1/x) between x and x+1.

    ``steps[i]`` orders f(x) against f(x+1) for ``x = 2 + i``; GREATER
    means f decreases at that step.
    """

    x_max: int
    steps: tuple[Ordering, ...]
    sign_changes: int

    @property
    def shape(self) -> str:
        dirs = [s for s in self.steps if s is not Ordering.EQUAL]
        if not dirs:
            return "constant"
        if self.sign_changes == 0:
            return "decreasing" if dirs[0] is Ordering.GREATER else "increasing"
        return "decreasing_then_increasing" if dirs[0] is Ordering.GREATER else "increasing_then_decreasing"

    @property
    def turning_x(self) -> Optional[int]:
        """First x at which the direction has flipped, if it ever does."""
        prev = None
        for i, s in enumerate(self.steps):
            if s is Ordering.EQUAL:
                continue
            if prev is not None and s is not prev:
                return 2 + i
            prev = s
        return None


def star_sequence_profile(h: TargetGraph, x_max: int) -> StarProfile:
    """Exact step directions of f on 2..x_max+1; at most one flip allowed."""
    if x_max < 3:
        raise RegimeError(f"x_max must be >= 3, got {x_max}")
    sums = {x: star_power_sum(h, x) for x in range(2, x_max + 2)}
    steps = tuple(
        cmp_root_powers(sums[x], x, sums[x + 1], x + 1) for x in range(2, x_max + 1)
    )
    dirs = [s for s in steps if s is not Ordering.EQUAL]
    changes = sum(1 for a, b in zip(dirs, dirs[1:]) if a is not b)
    if changes > 1:
        raise InvariantViolation(
            f"star sequence of {h!r} changes direction {changes} times: "
            f"{[s.symbol for s in steps]}"
        )
    return StarProfile(x_max, steps, changes)


@dataclass(frozen=True)
class PathThreshold:
    """Approximate long-path threshold with exact certification at a few k."""

    l_H: int
    c: float
    lambda1_per_component: tuple[float, ...]
    c_per_component: tuple[float, ...]
    l_per_component: tuple[int, ...]
    spot_checks: tuple[tuple[int, int, int, bool], ...]  # (k, q^2*max A^(k-1), Delta^(k-4), holds)
    approximate: bool = True

    @property
    def certified(self) -> bool:
        return all(ok for *_, ok in self.spot_checks)

    def to_dict(self) -> dict:
        return {
            "l_H": str(self.l_H),
            "c": self.c,
            "lambda1_per_component": list(self.lambda1_per_component),
            "c_per_component": list(self.c_per_component),
            "l_per_component": [str(x) for x in self.l_per_component],
            "approximate": True,
            "certified": self.certified,
            "spot_checks": [
                {"k": str(k), "lhs": str(a), "rhs": str(b), "op": "<" if ok else ">=", "exact": True}
                for k, a, b, ok in self.spot_checks
            ],
        }


def _perron(a: np.ndarray, tolerance: float, max_iter: int = 1_000_000):
    """Largest eigenvalue and positive eigenvector of a connected component.

    Iterates on ``A + I`` so bipartite components converge as well.
    """
    shifted = a + np.eye(len(a))
    x = np.ones(len(a)) / math.sqrt(len(a))
    lam = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        new_lam = float(x @ y)
        y /= np.linalg.norm(y)
        if abs(new_lam - lam) < tolerance and np.max(np.abs(y - x)) < tolerance:
            x = y
            lam = new_lam
            break
        x, lam = y, new_lam
    return lam - 1.0, x


def path_threshold(h: TargetGraph, tolerance: float = 1e-9) -> PathThreshold:
    """Least l with c * lambda1**k < Delta**(k-4) / q**2 for every k >= l.

    ``c`` is the ratio of largest to smallest Perron-vector entry. Requires
    the bipartite regime (both short-cycle roots below Delta).
    """
    verdict = regime_delta2(h)
    if verdict.regime != "bipartite":
        raise RegimeError(
            "long-path threshold needs max(hom(C3)^(1/3), hom(C4)^(1/4)) < Delta; "
            f"got hom(C3)={verdict.hom_c3}, hom(C4)={verdict.hom_c4}, Delta={h.max_degree()}"
        )
    big = h.max_degree()
    q = h.q
    lams, cs, ls = [], [], []
    for comp in h.components():
        a = np.array(h.induced(comp).rows(), dtype=float)
        lam, vec = _perron(a, tolerance)
        if lam >= big - tolerance:
            raise RegimeError(f"component {comp} has lambda1 ~ {lam:.12g} >= Delta={big}")
        vec = np.abs(vec)
        c = float(vec.max() / vec.min())
        # c*lam^k*q^2*Delta^4 < Delta^k  <=>  k > log(c q^2 Delta^4) / log(Delta/lam)
        bound = math.log(c * q * q * big**4) / math.log(big / lam)
        k = max(2, math.floor(bound) - 2)
        while c * lam**k * q * q >= float(big) ** (k - 4):
            k += 1
        lams.append(lam)
        cs.append(c)
        ls.append(k)
    l_h = max(ls)
    a = h.rows()
    checks = []
    p = matrix_power(a, l_h - 1)
    for k in range(l_h, l_h + 5):
        top = max(max(row) for row in p)
        lhs, rhs = q * q * top, big ** (k - 4)
        checks.append((k, lhs, rhs, lhs < rhs))
        p = [[sum(x * y for x, y in zip(row, col)) for col in zip(*a)] for row in p]
    return PathThreshold(l_h, max(cs), tuple(lams), tuple(cs), tuple(ls), tuple(checks))


@dataclass(frozen=True)
class P4Check:
    max_pinned_count: int
    bound: int
    strict: bool


def p4_bound_check(h: TargetGraph) -> P4Check:
    """Max pinned 4-vertex-path count against Delta**2."""
    top = max(max(row) for row in matrix_power(h.rows(), 3))
    bound = h.max_degree() ** 2
    if top > bound:
        raise InvariantViolation(f"pinned P4 count {top} exceeds Delta^2={bound} for {h!r}")
    flags = structure_flags(h)
    strict = top < bound
    if not strict and not (flags.has_K_Delta_loop_component or flags.has_K_DeltaDelta_component):
        raise InvariantViolation(
            f"pinned P4 count reaches Delta^2={bound} for {h!r} without a "
            "looped-clique or balanced complete bipartite component"
        )
    return P4Check(top, bound, strict)


# -- full report ------------------------------------------------------------------


@dataclass
class RegimeReport:
    delta: int
    sum_d: int
    Delta: int
    verdicts: dict
    n0: Optional[int]
    boundary_equality: bool
    s_delta: int
    structure_flags: StructureFlags
    C_H: Optional[float]
    comparisons: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "sum_d": str(self.sum_d),
            "Delta": str(self.Delta),
            "n0": None if self.n0 is None else str(self.n0),
            "boundary_equality": self.boundary_equality,
            "s_delta": str(self.s_delta),
            "structure_flags": self.structure_flags.to_dict(),
            "C_H": None if self.C_H is None else {"value": self.C_H, "exact": False, "informational": True},
            "verdicts": self.verdicts,
            "comparisons": [c.to_dict() for c in self.comparisons],
        }


def classify(h: TargetGraph, delta: int = 2) -> RegimeReport:
    """Full regime report for H at the given minimum degree."""
    if delta < 1:
        raise RegimeError(f"delta must be >= 1, got {delta}")
    big = h.max_degree()
    total = sum(h.degrees())
    flags = structure_flags(h)
    ledger = [_cmp("sum d(v) vs Delta^2", total, big * big)]
    below = total < big * big
    verdicts: dict = {}

    n0 = None
    boundary = False
    if flags.is_K_Delta_loop:
        verdicts["min_degree_1"] = {"regime": "fully_looped", "maximizer": "every graph"}
    elif not below:
        verdicts["min_degree_1"] = {"regime": "matching", "maximizer": "n/2 K_2"}
    else:
        n0, boundary = compute_n0(h)
        ledger.append(
            _cmp(f"sum_d^{n0} vs hom(K_1,{n0 - 1})^2", total**n0, star_power_sum(h, n0) ** 2)
        )
        ledger.append(
            _cmp(
                f"sum_d^{n0 - 1} vs hom(K_1,{n0 - 2})^2",
                total ** (n0 - 1),
                star_power_sum(h, n0 - 1) ** 2,
            )
        )
        verdicts["min_degree_1"] = {
            "regime": "star",
            "maximizer": f"n/2 K_2 for n < {n0}, K_1,n-1 for n >= {n0}",
            "n0": str(n0),
            "boundary_tie_at": str(n0 - 1) if boundary else None,
        }

    d2 = regime_delta2(h)
    ledger.extend(d2.comparisons(big))
    if flags.is_K_Delta_loop:
        verdicts["min_degree_2"] = {"regime": "fully_looped", "maximizer": "every graph"}
    elif d2.regime == "cycles":
        verdicts["min_degree_2"] = {
            "regime": "cycles",
            "dominant": d2.dominant,
            "maximizer": {"C3": "n/3 C_3", "C4": "n/4 C_4", "tie": "unions of C_3 and C_4"}[d2.dominant],
        }
    else:
        verdicts["min_degree_2"] = {
            "regime": "bipartite",
            "maximizer": "K_2,n-2 for n beyond an H-dependent threshold",
        }

    verdicts["degree_sum_below_square"] = {
        "satisfied": below,
        "maximizer": f"K_{delta},n-{delta} for large n" if below else None,
        "sharpened_threshold": below and flags.shared_max_degree_neighborhoods,
    }
    special = (not flags.is_K_Delta_loop and flags.looped_dominating_vertex) or (
        below and flags.unique_max_degree_vertex
    )
    verdicts["complete_bipartite_special_case"] = {
        "satisfied": special,
        "via": [
            name
            for name, ok in (
                ("looped_dominating_vertex", not flags.is_K_Delta_loop and flags.looped_dominating_vertex),
                ("unique_max_degree_vertex", below and flags.unique_max_degree_vertex),
            )
            if ok
        ],
    }
    if delta >= 3:
        kc = hom_complete(delta + 1, h)
        kb = hom_complete_bipartite(delta, delta, h, fallback=True)
        o = cmp_root_powers(kc, delta + 1, kb, 2 * delta)
        ledger.append(
            Comparison(
                f"hom(K_{delta + 1})^(1/{delta + 1}) vs hom(K_{delta},{delta})^(1/{2 * delta})",
                kc ** (2 * delta),
                kb ** (delta + 1),
                o,
            )
        )
        verdicts["min_degree_general"] = {
            "status": "proven" if below else "conjectural",
            "candidate": (
                f"K_{delta},n-{delta}"
                if below
                else {Ordering.GREATER: f"n/{delta + 1} K_{delta + 1}", Ordering.LESS: f"n/{2 * delta} K_{delta},{delta}", Ordering.EQUAL: "tie"}[o]
            ),
        }

    c_h = None
    if below and big > 1:
        c_h = delta * math.log(big) / math.log(big * big / total)
    elif below:
        c_h = 0.0
    return RegimeReport(
        delta=delta,
        sum_d=total,
        Delta=big,
        verdicts=verdicts,
        n0=n0,
        boundary_equality=boundary,
        s_delta=s_delta(h, delta, cap=max(S_DELTA_CAP, delta)),
        structure_flags=flags,
        C_H=c_h,
        comparisons=ledger,
    )
