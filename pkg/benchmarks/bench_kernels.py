"""Compare the compiled and pure-Python kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Both backends must return identical results; the script aborts otherwise.
"""

import argparse
import statistics
import sys
import time

from homx import kernels
from homx.families import all_graphs
from homx.graphs import complete_bipartite, cycle, disjoint_union, h_ind, h_wr, hard_core, star
from homx.hom import _plan


def hom_workload(quick):
    targets = [h_ind(), h_wr(), hard_core(3)]
    sources = [cycle(14), complete_bipartite(3, 9), star(16), disjoint_union(cycle(5), cycle(6))]
    if not quick:
        sources += [cycle(16), complete_bipartite(4, 10), star(24)]
    jobs = []
    for g in sources:
        for h in targets:
            for prev, terminal in _plan(g):
                jobs.append((prev, terminal, h.adj, h.q))
    return jobs


def canon_workload(quick):
    gs = all_graphs(6 if quick else 7)
    return [g.adj for g in gs]


def run_hom(backend, jobs):
    return [backend.count_homs(*j) for j in jobs]


def run_canon(backend, jobs):
    return [tuple(backend.canonical_labeling(a)) for a in jobs]


def timeit(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args(argv)

    py = kernels.python_backend
    cy = kernels.compiled_backend
    if cy is None:
        print("compiled extension not built; only the Python kernels are available")
        return 1

    print(f"{'workload':<22}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, build, run in (
        ("hom counting", hom_workload, run_hom),
        ("canonical labeling", canon_workload, run_canon),
    ):
        jobs = build(args.quick)
        tp, rp = timeit(lambda: run(py, jobs), args.repeat)
        tc, rc = timeit(lambda: run(cy, jobs), args.repeat)
        if rp != rc:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
