"""Time the naive and spectral products and report where the spectral path wins.

    python scripts/bench_multiply.py --max-n 4096 --repeat 20
"""

import argparse
import timeit

import numpy as np

from eucalg.core import negacyclic_convolve
from eucalg.spectral import multiply_fast_array


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=4096)
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    sizes = [n for n in (8, 16, 32, 48, 64, 100, 128, 256, 500, 512, 1000, 1024, 2048, 4096, 8192) if n <= args.max_n]
    crossover = None
    print(f"{'n':>6} {'naive [us]':>12} {'fast [us]':>12} {'speedup':>8} {'max diff':>10}")
    for n in sizes:
        u, v = rng.uniform(-1, 1, (2, n))
        t_naive = best_time(lambda: negacyclic_convolve(u, v), args.repeat)
        t_fast = best_time(lambda: multiply_fast_array(u, v), args.repeat)
        diff = float(np.max(np.abs(negacyclic_convolve(u, v) - multiply_fast_array(u, v))))
        print(f"{n:>6} {1e6 * t_naive:>12.1f} {1e6 * t_fast:>12.1f} {t_naive / t_fast:>8.2f} {diff:>10.1e}")
        if crossover is None and t_fast < t_naive:
            crossover = n
    print(f"first size where the spectral path is faster: {crossover}")


if __name__ == "__main__":
    main()
