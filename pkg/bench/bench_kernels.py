"""Time the compiled and numpy kernel backends on the workloads the
scheme code actually runs.

    python3 bench/bench_kernels.py [--repeat 3]
"""

import argparse
import itertools
import time

import numpy as np

from toricsss import kernels
from toricsss.code import evaluation_matrix, torus_support
from toricsss.gf import GF
from toricsss.lattice import Hirzebruch, Trapezoid, family_points, minkowski_sum, reduce_mod


def cases():
    F5, F8 = GF(5), GF(2, 3)
    hz = evaluation_matrix(family_points(Hirzebruch(2, 1, 1)), torus_support(F5, 2))
    tz = evaluation_matrix(family_points(Trapezoid(2, 2, 8)), torus_support(F8, 2))
    U = family_points(Trapezoid(2, 2, 8))
    vv = evaluation_matrix(reduce_mod(minkowski_sum(U, U), 8), torus_support(F8, 2))
    GV = kernels.rref(vv.matrix, F8)[0][:35]
    survivors = np.array([[j for j in range(1, 49) if j != i] for i in range(1, 49)])
    pairs = np.array(list(itertools.islice(itertools.combinations(range(1, 49), 20), 4000)))

    yield "rref 21x49 GF(8)", lambda: kernels.rref(tz.matrix, F8)
    yield "weight histogram k=9 GF(5)", lambda: kernels.weight_histogram(kernels.rref(hz.matrix, F5)[0][:9], F5)
    yield "batch_rank 48 x (35x47) GF(8)", lambda: kernels.batch_rank(GV, survivors, F8)
    yield "batch_in_span 4000 x 20 cols GF(8)", lambda: kernels.batch_in_span(
        tz.basis(), tz.basis()[:, 0], pairs, F8
    )


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"{'workload':<38}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases():
        times = []
        for b in backends:
            kernels.use_backend(b)
            times.append(bench(fn, args.repeat))
        kernels.use_backend(None)
        row = f"{name:<38}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
