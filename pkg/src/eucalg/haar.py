"""Monte Carlo integration of the Haar measure on the unit group G_n.

The measure has density ``1/|det sigma(x)|`` with respect to Lebesgue
measure.  Borel sets are restricted to axis-aligned boxes; samples that land
within the zero-divisor threshold are dropped (they contribute nothing) and
counted in ``clipped``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import AlgebraContext, Element, negacyclic_convolve
from .errors import AllSamplesClipped, DimensionMismatch, ZeroDivisor
from .spectral import spectral_ratio_array, spectrum_array
from .zero_divisors import CHUNK_SIZE, _chunks

# Estimates with more than this fraction of clipped samples are unreliable.
CLIP_WARN_FRACTION = 0.01


@dataclass(frozen=True, eq=False)
class RegionBox:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lower, dtype=float, copy=True).reshape(-1)
        hi = np.array(self.upper, dtype=float, copy=True).reshape(-1)
        if lo.shape != hi.shape:
            raise DimensionMismatch(f"lower has {lo.size} entries, upper has {hi.size}")
        if not np.all(lo < hi):
            raise ValueError("box needs lower < upper in every coordinate")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def n(self) -> int:
        return self.lower.size

    @property
    def volume(self) -> float:
        return float(np.prod(self.upper - self.lower))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.lower + (self.upper - self.lower) * rng.random((size, self.n))

    def to_json(self) -> dict:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "RegionBox":
        return cls(data["lower"], data["upper"])


@dataclass(frozen=True)
class HaarEstimate:
    value: float
    std_error: float
    samples: int
    clipped: int

    @property
    def unreliable(self) -> bool:
        return self.clipped > CLIP_WARN_FRACTION * self.samples

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "std_error": self.std_error,
            "samples": self.samples,
            "clipped": self.clipped,
            "unreliable": self.unreliable,
        }


def haar_density(x: Element) -> float:
    lam = spectrum_array(x.coeffs)
    if float(spectral_ratio_array(lam)) <= x.context.tol_zero:
        raise ZeroDivisor(f"density is singular at {x!r}")
    det = float(np.prod(np.abs(lam)))
    if det == 0.0:
        raise ZeroDivisor(f"|det| underflows at {x!r}")
    return 1.0 / det


def _estimate(
    box: RegionBox,
    samples: int,
    seed: int,
    threshold: float,
    transform: Callable[[np.ndarray], np.ndarray],
    weight: float,
    workers: int,
) -> HaarEstimate:
    if samples < 2:
        raise ValueError("need at least two samples for an error estimate")
    sizes = _chunks(samples, CHUNK_SIZE)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def chunk(job):
        size, ss = job
        x = transform(box.sample(np.random.default_rng(ss), size))
        lam = spectrum_array(x)
        keep = spectral_ratio_array(lam) > threshold
        f = np.zeros(size)
        f[keep] = weight / np.prod(np.abs(lam[keep]), axis=-1)
        return float(f.sum()), float(np.dot(f, f)), int(size - np.count_nonzero(keep))

    jobs = list(zip(sizes, seeds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(chunk, jobs))
    else:
        parts = [chunk(j) for j in jobs]
    # reduce in chunk order so the floating-point sum is schedule independent
    s1 = s2 = 0.0
    clipped = 0
    for a, b, c in parts:
        s1 += a
        s2 += b
        clipped += c
    if clipped == samples:
        raise AllSamplesClipped(f"all {samples} samples fell within the zero-divisor threshold")
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1)
    vol = box.volume
    return HaarEstimate(vol * mean, vol * float(np.sqrt(var / samples)), samples, clipped)


def haar_measure_mc(
    box: RegionBox,
    samples: int = 100_000,
    seed: int = 0,
    ctx: AlgebraContext | None = None,
    threshold: float | None = None,
    workers: int = 1,
) -> HaarEstimate:
    """Plain Monte Carlo estimate of the Haar measure of ``box``."""
    ctx = ctx or AlgebraContext(box.n)
    if ctx.n != box.n:
        raise DimensionMismatch(f"box lives in R^{box.n}, context has n={ctx.n}")
    thr = ctx.tol_zero if threshold is None else threshold
    return _estimate(box, samples, seed, thr, lambda y: y, 1.0, workers)


def translate_region(
    a: Element,
    box: RegionBox,
    samples: int = 100_000,
    seed: int = 0,
    threshold: float | None = None,
    workers: int = 1,
) -> HaarEstimate:
    """Estimate the measure of ``a*box`` by pushing uniform samples of ``box`` through ``y -> a*y``.

    The linear map ``y -> y sigma(a)`` has Jacobian ``|det sigma(a)|``, which
    weights each sample; the density is evaluated at the image point.
    """
    if a.n != box.n:
        raise DimensionMismatch(f"a is in R_{a.n}, box in R^{box.n}")
    lam_a = spectrum_array(a.coeffs)
    if float(spectral_ratio_array(lam_a)) <= a.context.tol_zero:
        raise ZeroDivisor(f"cannot translate by zero divisor {a!r}")
    jac = float(np.prod(np.abs(lam_a)))
    thr = a.context.tol_zero if threshold is None else threshold
    coeffs = a.coeffs
    return _estimate(box, samples, seed, thr, lambda y: negacyclic_convolve(y, coeffs), jac, workers)


def haar_measure_union(
    boxes: Sequence[RegionBox],
    samples: int = 100_000,
    seed: int = 0,
    ctx: AlgebraContext | None = None,
    threshold: float | None = None,
) -> HaarEstimate:
    """Sum of per-box estimates; the boxes are assumed pairwise disjoint."""
    if not boxes:
        raise ValueError("need at least one box")
    seeds = np.random.SeedSequence(seed).generate_state(len(boxes))
    parts = [haar_measure_mc(b, samples, int(s), ctx, threshold) for b, s in zip(boxes, seeds)]
    return HaarEstimate(
        value=sum(p.value for p in parts),
        std_error=float(np.sqrt(sum(p.std_error**2 for p in parts))),
        samples=sum(p.samples for p in parts),
        clipped=sum(p.clipped for p in parts),
    )


def invariance_verdict(base: HaarEstimate, moved: HaarEstimate, k: float = 3.0) -> bool:
    """True when the two estimates agree within ``k`` combined standard errors."""
    sigma = float(np.hypot(base.std_error, moved.std_error))
    return abs(moved.value - base.value) <= k * sigma
