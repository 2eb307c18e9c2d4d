"""Command-line interface.

Exit status 0 on success, 2 for bad parameters or malformed input, 3 when
an internal check finds a counterexample to a proven statement.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import kernels
from .classify import classify, p4_bound_check, path_threshold, regime_delta2, star_sequence_profile
from .critical import decompose_delta2, generate_emc
from .errors import HomxError, InvariantViolation, ParameterError
from .families import FamilySpec
from .graphs import (
    SimpleGraph,
    TargetGraph,
    complete,
    complete_bipartite,
    cycle,
    h_ind,
    h_wr,
    hard_core,
    looped_complete,
    path,
    star,
)
from .hom import hom_brute, z_weighted
from .io import load_target, parse_graph6, parse_weights, read_graph6_stream, write_graph6
from .search import (
    default_jobs,
    empirical_threshold,
    iter_family_values,
    verify_2regular,
    verify_conjecture,
    verify_min_degree_1,
)

SOURCES = {
    "emc": "generated_emc",
    "brute": "all_graphs_bruteforce",
    "g6-stdin": "graph6_stream",
    "g6-file": "graph6_stream",
}


# -- argument parsing helpers -----------------------------------------------------


def _int_arg(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParameterError(f"{what}: expected an integer, got {text!r}") from None


def parse_target(text: str) -> TargetGraph:
    """Alias (ind, wr, hc:k, kq:q, kqloop:q) or inline rows like ``01/11``."""
    t = text.strip()
    if t == "ind":
        return h_ind()
    if t == "wr":
        return h_wr()
    if ":" in t:
        kind, _, arg = t.partition(":")
        k = _int_arg(arg, kind)
        if kind == "hc":
            return hard_core(k)
        if kind == "kq":
            if k < 2:
                raise ParameterError("kq:q needs q >= 2 (K_1 has an isolated vertex)")
            return TargetGraph.from_simple(complete(k))
        if kind == "kqloop":
            return looped_complete(k)
        raise ParameterError(f"unknown target alias {kind!r}")
    return TargetGraph.parse_inline(t)


def parse_graph_spec(text: str) -> SimpleGraph:
    """``cycle:n``, ``path:n``, ``star:n``, ``complete:n``, ``cbip:a,b`` or ``g6:<line>``."""
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ParameterError(f"graph spec {text!r} needs the form kind:args")
    if kind == "g6":
        return parse_graph6(arg)
    if kind == "cbip":
        parts = arg.split(",")
        if len(parts) != 2:
            raise ParameterError(f"cbip needs two sizes a,b, got {arg!r}")
        return complete_bipartite(_int_arg(parts[0], "cbip"), _int_arg(parts[1], "cbip"))
    makers = {"cycle": cycle, "path": path, "star": star, "complete": complete}
    if kind not in makers:
        raise ParameterError(f"unknown graph kind {kind!r}")
    return makers[kind](_int_arg(arg, kind))


def _target(args) -> TargetGraph:
    if args.target_file:
        h = load_target(args.target_file)
    elif args.target:
        h = parse_target(args.target)
    else:
        raise ParameterError(f"{args.command} needs --target or --target-file")
    if args.weights:
        h = h.with_weights(parse_weights(args.weights))
    return h


def _family(args) -> FamilySpec:
    source = SOURCES[args.source]
    stream = None
    if args.source == "g6-stdin":
        stream = sys.stdin
    elif args.source == "g6-file":
        if not args.g6_file:
            raise ParameterError("--source g6-file needs --g6-file PATH")
        stream = args.g6_file
    return FamilySpec(
        args.n,
        args.delta,
        source,
        max_degree=args.max_degree,
        regular=args.regular,
        bipartite=True if args.bipartite else None,
        stream=stream,
    )


# -- output -------------------------------------------------------------------------


def _stringify(obj):
    """Numbers become decimal strings; containers are walked."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, float, Fraction)):
        return str(obj)
    if isinstance(obj, bytes):
        return obj.decode("ascii")
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _flatten(doc, prefix=""):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(doc, list):
        if all(not isinstance(v, (dict, list)) for v in doc):
            yield prefix[:-1], " ".join("null" if v is None else str(v) for v in doc)
        else:
            for i, v in enumerate(doc):
                yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], "null" if doc is None else str(doc).lower() if isinstance(doc, bool) else doc


def emit(doc: dict, fmt: str, out) -> None:
    doc = _stringify(doc)
    if fmt == "json":
        json.dump(doc, out, indent=2, sort_keys=False)
        out.write("\n")
    elif fmt == "plain":
        for k, v in _flatten(doc):
            out.write(f"{k}: {v}\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(doc):
            w.writerow([k, v])


# -- commands ---------------------------------------------------------------------------


def _value(g: SimpleGraph, h: TargetGraph):
    return hom_brute(g, h) if h.is_unweighted else z_weighted(g, h)


def cmd_count(args, out):
    h = _target(args)
    if args.graph_file:
        with open(args.graph_file, encoding="ascii") as fh:
            graphs = list(read_graph6_stream(fh))
    elif args.graph:
        graphs = [parse_graph_spec(args.graph)]
    else:
        raise ParameterError("count needs --graph or --graph-file")
    rows = [{"graph": write_graph6(g), "n": g.n, "value": _value(g, h)} for g in graphs]
    if args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["graph", "n", "value"])
        for r in rows:
            w.writerow([r["graph"], r["n"], str(r["value"])])
        return
    doc = {"target": h.inline(), "weighted": not h.is_unweighted, "backend": kernels.BACKEND}
    if len(rows) == 1:
        doc.update(rows[0])
    else:
        doc["results"] = rows
    emit(doc, args.output, out)


def cmd_classify(args, out):
    h = _target(args)
    report = classify(h, args.delta)
    doc = report.to_dict()
    doc["target"] = h.inline()
    doc["star_profile"] = {
        "x_max": args.x_max,
        "shape": star_sequence_profile(h, args.x_max).shape,
        "steps": [s.symbol for s in star_sequence_profile(h, args.x_max).steps],
    }
    p4 = p4_bound_check(h)
    doc["pinned_P4"] = {"max": p4.max_pinned_count, "bound": p4.bound, "strict": p4.strict}
    if args.path_threshold:
        if regime_delta2(h).regime == "bipartite":
            doc["path_threshold"] = path_threshold(h, args.tolerance).to_dict()
        else:
            doc["path_threshold"] = None
    emit(doc, args.output, out)


def cmd_generate(args, out):
    graphs = generate_emc(args.n, args.delta)
    if args.output == "json":
        emit({"n": args.n, "delta": args.delta, "count": len(graphs), "graphs": [write_graph6(g) for g in graphs]}, "json", out)
    elif args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["graph6"])
        for g in graphs:
            w.writerow([write_graph6(g)])
    else:
        for g in graphs:
            out.write(write_graph6(g) + "\n")


def cmd_decompose(args, out):
    if args.graph_file:
        with open(args.graph_file, encoding="ascii") as fh:
            graphs = list(read_graph6_stream(fh))
    elif args.graph:
        graphs = [parse_graph_spec(args.graph)]
    else:
        raise ParameterError("decompose needs --graph or --graph-file")
    docs = [{"graph": write_graph6(g), **decompose_delta2(g).to_dict()} for g in graphs]
    emit(docs[0] if len(docs) == 1 else {"decompositions": docs}, args.output, out)


def cmd_search(args, out):
    h = _target(args)
    spec = _family(args)
    rows = []
    truncated = False
    try:
        for row in iter_family_values(spec, h, args.jobs):
            rows.append(row)
    except KeyboardInterrupt:
        truncated = True
    rows.sort(key=lambda r: r[0])
    if not rows and not truncated:
        raise ParameterError(f"family {spec.describe()} is empty")
    top = max((v for _, v in rows), default=None)
    if args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["canonical_form", "hom", "is_maximizer"])
        for key, v in rows:
            w.writerow([key.decode("ascii"), str(v), "true" if v == top else "false"])
        if truncated:
            w.writerow(["truncated", "", ""])
        out.flush()
        if truncated:
            raise KeyboardInterrupt
        return
    if truncated:
        raise KeyboardInterrupt
    emit(
        {
            "family": spec.describe(),
            "target": h.inline(),
            "family_size": len(rows),
            "max_value": top,
            "witnesses": [k for k, v in rows if v == top],
        },
        args.output,
        out,
    )


def cmd_verify(args, out):
    h = _target(args)
    if args.check == "two-regular":
        doc = verify_2regular(args.n, h).to_dict()
    elif args.check == "min-degree-1":
        source = SOURCES[args.source]
        if source == "graph6_stream":
            raise ParameterError("min-degree-1 check runs on emc or brute families")
        doc = verify_min_degree_1(args.n, h, source, args.max_degree, args.jobs).to_dict()
    elif args.check == "threshold":
        lo = args.n_min if args.n_min is not None else args.delta + 2
        doc = empirical_threshold(h, range(lo, args.n + 1), args.delta, SOURCES[args.source], args.jobs).to_dict()
    else:
        doc = verify_conjecture(_family(args), h, args.jobs).to_dict()
    doc["target"] = h.inline()
    emit(doc, args.output, out)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homx", description="Exact homomorphism counts and extremal checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, target=True):
        sp.add_argument("--output", choices=("json", "csv", "plain"), default="json")
        if target:
            sp.add_argument("--target", help="ind, wr, hc:k, kq:q, kqloop:q, or rows like 01/11")
            sp.add_argument("--target-file", help="JSON target document")
            sp.add_argument("--weights", help="vertex weights, e.g. 1,2/3")

    def family(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--delta", type=int, default=2)
        sp.add_argument("--source", choices=tuple(SOURCES), default="emc")
        sp.add_argument("--g6-file")
        sp.add_argument("--max-degree", type=int)
        sp.add_argument("--regular", type=int)
        sp.add_argument("--bipartite", action="store_true")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (default $HOMX_JOBS or 1)")

    sp = sub.add_parser("count", help="hom(G, H) for one graph or a graph6 file")
    common(sp)
    sp.add_argument("--graph", help="cycle:n, path:n, star:n, complete:n, cbip:a,b, g6:<line>")
    sp.add_argument("--graph-file")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("classify", help="regime report for a target")
    common(sp)
    sp.add_argument("--delta", type=int, default=2)
    sp.add_argument("--x-max", type=int, default=10)
    sp.add_argument("--path-threshold", action="store_true", help="include the long-path threshold")
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("generate", help="edge-min-critical graphs as graph6")
    common(sp, target=False)
    sp.set_defaults(output="plain")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", type=int, default=2)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("decompose", help="thread decomposition of a minimum-degree-2 critical graph")
    common(sp, target=False)
    sp.add_argument("--graph")
    sp.add_argument("--graph-file")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("search", help="maximize hom(G, H) over a family")
    common(sp)
    family(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="check a bound over a family")
    common(sp)
    family(sp)
    sp.add_argument(
        "--check", choices=("conjecture", "two-regular", "min-degree-1", "threshold"), default="conjecture"
    )
    sp.add_argument("--n-min", type=int, help="smallest n for --check threshold")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "jobs", 1) is None:
            args.jobs = default_jobs()
        args.func(args, out)
    except InvariantViolation as exc:
        print(f"homx: invariant violated: {exc}", file=sys.stderr)
        return 3
    except (HomxError, OSError) as exc:
        print(f"homx: error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130
    return 0


if __name__ == "__main__":
    sys.exit(main())
