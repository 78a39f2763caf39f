"""Count the square roots of +1 and -1 in R_n for small n.

Each eigenvalue of a root must itself be a square root of +-1, and real
coefficients pair eigenvalue k with n-1-k, so the expected counts are
2**ceil(n/2) roots of +1, and 2**(n/2) roots of -1 for even n (none for odd n).
Every root is checked by substitution.

    python scripts/sqrt_enumeration.py --max-n 10 --show 4
"""

import argparse
import math

import numpy as np

from eucalg.core import AlgebraContext
from eucalg.zero_divisors import square_residual, square_roots_of_sign


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--show", type=int, nargs="*", default=[4], help="dimensions whose roots are printed")
    args = p.parse_args()

    print(f"{'n':>3} {'#sqrt(+1)':>10} {'#sqrt(-1)':>10} {'expected':>12} {'max residual':>13}")
    for n in range(2, args.max_n + 1):
        ctx = AlgebraContext(n)
        plus, minus = square_roots_of_sign(ctx, 1), square_roots_of_sign(ctx, -1)
        expected = (2 ** math.ceil(n / 2), 0 if n % 2 else 2 ** (n // 2))
        res = max([square_residual(v, 1) for v in plus] + [square_residual(v, -1) for v in minus])
        print(f"{n:>3} {len(plus):>10} {len(minus):>10} {str(expected):>12} {res:>13.1e}")
        if n in args.show:
            with np.printoptions(precision=6, suppress=True):
                for sign, roots in (("+1", plus), ("-1", minus)):
                    for v in roots:
                        print(f"      sqrt({sign}) {v.coeffs}")


if __name__ == "__main__":
    main()
