"""Fraction of unit-ball samples whose determinant falls below eps.

In R_2 the determinant is a^2 + b^2, so the fraction is exactly eps.  For
larger n the fraction should shrink with eps, consistent with the zero
divisors forming a Lebesgue-null set.

    python scripts/zero_divisor_measure.py --n 2 3 4 8 --samples 1000000
"""

import argparse
import math

from eucalg.core import AlgebraContext
from eucalg.zero_divisors import estimate_zero_divisor_measure


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.01, 1e-3, 1e-4])
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args()

    print(f"seed={args.seed} samples={args.samples}")
    print(f"{'n':>3} {'eps':>8} {'fraction':>10} {'binomial se':>12}")
    for n in args.n:
        ctx = AlgebraContext(n)
        for eps in args.eps:
            frac = estimate_zero_divisor_measure(ctx, args.samples, eps, args.seed, args.workers)
            se = math.sqrt(max(frac * (1 - frac), 1e-300) / args.samples)
            print(f"{n:>3} {eps:>8.0e} {frac:>10.5f} {se:>12.1e}")


if __name__ == "__main__":
    main()
