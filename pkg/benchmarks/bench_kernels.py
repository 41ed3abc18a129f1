#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on a representative workload with both backends and
prints the timings plus the speedup.  The numba path is warmed once so JIT
compilation is not billed to the measurement.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--csv PATH]
"""

import argparse
import csv
import sys
import time

from apresidues import kernels
from apresidues.residues import build_small_field_table


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--csv", default=None)
    args = parser.parse_args(argv)

    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1

    t499 = build_small_field_table(499)
    t2003 = build_small_field_table(2003)
    t10007 = build_small_field_table(10007)

    cases = [
        ("pow_table p=999983",
         lambda: kernels.pow_table_np(3, 999983),
         lambda: kernels.pow_table_nb(3, 999983)),
        ("inner_complete_sums p=499",
         lambda: kernels.inner_complete_sums_np(499, t499.roots()),
         lambda: kernels.inner_complete_sums_nb(499, t499.roots())),
        ("char_sum_one p=2003 k=2",
         lambda: kernels.char_sum_one_np(5, t2003.nonresidue_coset(2), 2003, t2003.roots()),
         lambda: kernels.char_sum_one_nb(5, t2003.nonresidue_coset(2), 2003, t2003.roots())),
        ("halfsums p=2003",
         lambda: kernels.halfsums_np(t2003.nonresidue_coset(2), 2003, t2003.roots()),
         lambda: kernels.halfsums_nb(t2003.nonresidue_coset(2), 2003, t2003.roots())),
        ("prefix_max_abs p=10007",
         lambda: kernels.prefix_max_abs_np(t10007.powers[1:].copy(), 10007, t10007.roots()),
         lambda: kernels.prefix_max_abs_nb(t10007.powers[1:].copy(), 10007, t10007.roots())),
        ("uhat_literal p=2003",
         lambda: kernels.uhat_literal_np(4, t2003.nonresidue_coset(2), 2003, t2003.roots()),
         lambda: kernels.uhat_literal_nb(4, t2003.nonresidue_coset(2), 2003, t2003.roots())),
    ]

    rows = []
    print(f"{'kernel':<28} {'numpy (s)':>10} {'numba (s)':>10} {'speedup':>8}")
    for name, np_fn, nb_fn in cases:
        nb_fn()  # warm the JIT cache
        t_np = timeit(np_fn, args.repeat)
        t_nb = timeit(nb_fn, args.repeat)
        speed = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{name:<28} {t_np:>10.4f} {t_nb:>10.4f} {speed:>7.1f}x")
        rows.append({"kernel": name, "numpy_s": f"{t_np:.6f}",
                     "numba_s": f"{t_nb:.6f}", "speedup": f"{speed:.2f}"})

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=["kernel", "numpy_s", "numba_s", "speedup"],
                                    lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
