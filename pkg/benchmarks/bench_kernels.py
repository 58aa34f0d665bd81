#!/usr/bin/env python3
"""Benchmark the numba kernels against their numpy/python fallbacks.

Workloads mirror the heaviest real uses: projection counting over the
531441-row array of the 6x6 strong transform over GF(9), the GF
matrix-application that builds that array, and the exhaustive size-4 search
over GF(5).  Run `AONTKIT_BACKEND=numpy` to confirm the fallback alone still
completes everything.
"""

import time
from itertools import combinations

import numpy as np

from aontkit import APPLY_INVERSE, MatrixGF, from_linear, invert, make_field
from aontkit import _kernels as K

RANGE9_ROWS = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 3, 4, 5, 6],
    [1, 3, 2, 6, 7, 4],
    [1, 4, 8, 5, 6, 7],
    [1, 5, 6, 3, 8, 2],
    [1, 6, 5, 2, 4, 3],
]


def timed(fn, repeat=1):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_projection(f9, arr):
    data = np.ascontiguousarray(arr.data)
    subsets = [np.array(c, dtype=np.int64)
               for c in combinations(range(12), 6)][:120]

    def run(counter):
        total = 0
        for cols in subsets:
            total += int(counter(data, cols, 9)[0])
        return total

    rows = []
    t_np, r_np = timed(lambda: run(K.projection_counts_numpy), repeat=2)
    rows.append(("projection counts (120 column sets x 531441 rows)", "numpy", t_np))
    if K.HAVE_NUMBA:
        K.projection_counts_numba(data[:2], subsets[0], 9)  # compile
        t_nb, r_nb = timed(lambda: run(K.projection_counts_numba), repeat=2)
        assert r_np == r_nb
        rows.append(("projection counts (120 column sets x 531441 rows)", "numba", t_nb))
    return rows


def bench_matmul(f9, m9):
    from aontkit.arrays import all_input_tuples
    xs = all_input_tuples(9, 6)
    inv = np.ascontiguousarray(invert(m9).data)
    args = (f9.exp_table, f9.log_table, f9.p, f9.n)
    rows = []
    t_np, r_np = timed(lambda: K.gf_matmul_numpy(xs, inv, *args))
    rows.append(("matrix application (531441 x 6 over GF(9))", "numpy", t_np))
    if K.HAVE_NUMBA:
        K.gf_matmul_numba(xs[:2], inv, *args)  # compile
        t_nb, r_nb = timed(lambda: K.gf_matmul_numba(xs, inv, *args))
        assert np.array_equal(r_np, r_nb)
        rows.append(("matrix application (531441 x 6 over GF(9))", "numba", t_nb))
    return rows


def bench_search():
    # fixed workload: exactly 500k placements into the GF(9) size-8 space
    # (above the proven maximum, so the tree never finds a witness and the
    # cap is what stops it), plus the real size-4 exhaustion over GF(5)
    f5 = make_field(5)
    f9 = make_field(3, 2, [1, 0, 1])
    args5 = (f5.exp_table, f5.log_table, f5.p, f5.n)
    args9 = (f9.exp_table, f9.log_table, f9.p, f9.n)
    cap = 500_000
    rows = []
    t_py, r_py = timed(lambda: K.search_strong_python(8, 9, *args9, cap, 2))
    rows.append(("search, 500k placements GF(9) size 8", "python", t_py))
    t_py4, r_py4 = timed(lambda: K.search_strong_python(4, 5, *args5, 10 ** 9, 2),
                         repeat=3)
    rows.append(("search, exhaust GF(5) size 4 (empty)", "python", t_py4))
    if K.HAVE_NUMBA:
        K.search_strong_numba(2, 5, *args5, 10 ** 9, 2)  # compile
        t_nb, r_nb = timed(lambda: K.search_strong_numba(8, 9, *args9, cap, 2))
        assert r_py[0] == r_nb[0] and r_py[2] == r_nb[2]
        rows.append(("search, 500k placements GF(9) size 8", "numba", t_nb))
        t_nb4, r_nb4 = timed(lambda: K.search_strong_numba(4, 5, *args5, 10 ** 9, 2),
                             repeat=3)
        assert r_py4 == r_nb4
        rows.append(("search, exhaust GF(5) size 4 (empty)", "numba", t_nb4))
    return rows


def main():
    print(f"active backend: {K.backend_name()}")
    f9 = make_field(3, 2, [1, 0, 1])
    m9 = MatrixGF(f9, RANGE9_ROWS)
    arr = from_linear(m9, APPLY_INVERSE)

    rows = []
    rows += bench_matmul(f9, m9)
    rows += bench_projection(f9, arr)
    rows += bench_search()

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  backend  seconds")
    for name, backend, secs in rows:
        print(f"{name.ljust(width)}  {backend:7}  {secs:.4f}")


if __name__ == "__main__":
    main()
