"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload runs the same kernel calls that FinCategory makes: the
associativity scan, a mono test for every arrow, and the full pullback search
over every cospan.  Timings are the best of ``--repeat`` runs.
"""
import argparse
import json
import sys
import time

from catcomp import _kernels, config
from catcomp.fixtures import diamond, doubled_diamond, finset_category, mon2, transformation_monoid


def workloads():
    with config.limits(max_morphisms=64):
        return [
            ("DIAMOND", diamond()),
            ("DOUBLED_DIAMOND", doubled_diamond()),
            ("MON2", mon2()),
            ("FinSet{0,1,2}", finset_category([0, 1, 2])),
            ("FinSet{1,2,3}", finset_category([1, 2, 3])),
            ("T3 (all maps on 3)", transformation_monoid([(1, 2, 0), (1, 0, 2), (0, 0, 2)], 3)),
        ]


def run_all(k, c):
    args = c.kernel_args()
    n = len(c.morphisms)
    k.assoc_violations(c.dom_arr, c.cod_arr, c.comp_arr)
    for i in range(n):
        k.mono_witness(i, *args)
    for f in range(n):
        for g in range(n):
            if c.cod_arr[f] == c.cod_arr[g]:
                k.pullback_cones(f, g, *args, False)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print machine-readable results")
    args = ap.parse_args(argv)

    backends = [("python", _kernels.python_kernels)]
    if _kernels.compiled_kernels is not None:
        backends.append(("cython", _kernels.compiled_kernels))
    else:
        print("compiled kernels not built; timing the Python fallback only", file=sys.stderr)

    rows = []
    for label, c in workloads():
        row = {"category": label, "morphisms": len(c.morphisms)}
        for name, k in backends:
            row[name] = best_of(lambda: run_all(k, c), args.repeat)
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"] if row["cython"] else float("inf")
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'category':<20} {'arrows':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for r in rows:
        cy = f"{r['cython']:.5f}" if "cython" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['category']:<20} {r['morphisms']:>6} {r['python']:>10.5f} {cy:>10} {sp:>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
