#!/usr/bin/env python3
"""Time the numba and numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--max-d 3]
"""

import argparse
import time

import numpy as np

from ghzparadox import kernels
from ghzparadox.lhv import extract_system
from ghzparadox.paradox import generate_tripartite


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_enumeration(max_d, repeat):
    print("exhaustive search over the qutrit-table system (Unsat, full scan)")
    print(f"{'D':>4} {'assignments':>12} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for d in range(1, max_d + 1):
        s = extract_system(generate_tripartite(3, d))
        coeffs = s.coeff_array()
        rhs = np.array(s.rhs, dtype=np.int64)
        total = s.assignment_count()
        args = (coeffs, rhs, np.int64(s.modulus), np.int64(total))
        kernels.first_solution_nb(*args[:2], np.int64(s.modulus), np.int64(1))  # compile
        t_nb, r_nb = best_of(lambda: kernels.first_solution_nb(*args), repeat)
        t_np, r_np = best_of(lambda: kernels.first_solution_np(*args), repeat)
        assert tuple(map(int, r_nb)) == tuple(map(int, r_np))
        print(f"{s.modulus:>4} {total:>12} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>8.1f}")


def bench_overlap(repeat):
    print("\nclosed-form overlap grid, 200 evaluations per size")
    print(f"{'D':>4} {'numba s':>10} {'numpy s':>10}")
    kernels.overlap_grid_nb(3, 0.5)
    for dim in (10, 50, 100):
        t_nb, a = best_of(lambda: [kernels.overlap_grid_nb(dim, 1 / 3) for _ in range(200)], repeat)
        t_np, b = best_of(lambda: [kernels.overlap_grid_np(dim, 1 / 3) for _ in range(200)], repeat)
        assert np.allclose(a[0], b[0])
        print(f"{dim:>4} {t_nb:>10.4f} {t_np:>10.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-d", type=int, default=3, help="largest dimension factor (D = 3d)")
    args = ap.parse_args()
    bench_enumeration(args.max_d, args.repeat)
    bench_overlap(args.repeat)


if __name__ == "__main__":
    main()
