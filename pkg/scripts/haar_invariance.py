"""Compare the Haar measure of a box with that of its translate by random units.

    python scripts/haar_invariance.py --n 2 3 4 --units 5 --boxes 3
"""

import argparse
import math

import numpy as np

from eucalg.core import AlgebraContext
from eucalg.haar import RegionBox, haar_measure_mc, invariance_verdict, translate_region
from eucalg.spectral import spectral_ratio, spectral_ratio_array, spectrum_array


def random_box(rng, n, min_ratio):
    # keep the box clear of the zero divisors so the density stays bounded
    while True:
        centre = rng.uniform(-1.5, 1.5, n)
        half = rng.uniform(0.1, 0.3, n)
        box = RegionBox(centre - half, centre + half)
        if float(np.min(spectral_ratio_array(spectrum_array(box.sample(rng, 2000))))) > min_ratio:
            return box


def random_unit(rng, ctx, min_ratio):
    while True:
        a = ctx.random(rng)
        if spectral_ratio(a) > min_ratio:
            return a


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--units", type=int, default=5)
    p.add_argument("--boxes", type=int, default=3)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    seeds = iter(np.random.SeedSequence(args.seed).generate_state(2 * args.units * args.boxes * len(args.n)))
    total = agree = 0
    for n in args.n:
        ctx = AlgebraContext(n)
        boxes = [random_box(rng, n, 0.05) for _ in range(args.boxes)]
        for _ in range(args.units):
            a = random_unit(rng, ctx, 0.1)
            for box in boxes:
                base = haar_measure_mc(box, args.samples, int(next(seeds)), ctx)
                moved = translate_region(a, box, args.samples, int(next(seeds)))
                z = (moved.value - base.value) / math.hypot(base.std_error, moved.std_error)
                ok = invariance_verdict(base, moved)
                total += 1
                agree += ok
                print(f"n={n} nu(E)={base.value:.6g} nu(aE)={moved.value:.6g} z={z:+.2f} {'ok' if ok else 'MISS'}")
    print(f"{agree}/{total} translates within 3 combined standard errors")


if __name__ == "__main__":
    main()
