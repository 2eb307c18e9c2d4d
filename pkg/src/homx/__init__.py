"""Exact graph homomorphism counting and extremal verification over
minimum-degree graph families."""

from .canon import canonical_form, canonical_graph, is_isomorphic
from .classify import (
    RegimeReport,
    classify,
    compute_n0,
    degree_condition,
    p4_bound_check,
    path_threshold,
    regime_delta2,
    s_delta,
    star_sequence_profile,
    structure_flags,
)
from .critical import (
    EarDecomposition,
    MatchingPartition,
    decompose_delta2,
    generate_emc,
    is_edge_min_critical,
    matching_partition,
    rebuild,
)
from .errors import (
    ConstructionError,
    FormatError,
    HomxError,
    InvariantViolation,
    ParameterError,
    RegimeError,
    ResourceError,
    Unsupported,
)
from .families import FamilySpec, all_graphs, enumerate_family
from .graphs import SimpleGraph, TargetGraph, make_family
from .hom import (
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
from .io import parse_graph6, read_graph6_stream, write_graph6
from .kernels import BACKEND
from .search import (
    SearchVerdict,
    argmax_hom,
    conjecture_bound,
    verify_2regular,
    verify_conjecture,
    verify_min_degree_1,
)

__version__ = "0.1.0"
