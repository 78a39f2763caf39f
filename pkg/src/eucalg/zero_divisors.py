"""Zero divisors, the unit group G_n, inverses and square roots of +-1."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .core import AlgebraContext, Element, negacyclic_convolve, scale, sigma
from .errors import DimensionMismatch, NotAZeroDivisor, ZeroDivisor
from .spectral import (
    Spectrum,
    abs_det_array,
    inverse_spectrum,
    slogdet_via_spectrum,
    spectral_ratio_array,
    spectrum_array,
)

SQRT2 = math.sqrt(2.0)

# Monte Carlo work is split into fixed-size chunks, each with its own child
# seed, so the result never depends on how chunks are scheduled.
CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class ZeroDivisorReport:
    det_value: float
    min_eigen_ratio: float
    is_zero_divisor: bool


def is_zero_divisor(u: Element, threshold: float | None = None) -> ZeroDivisorReport:
    """Classify ``u`` by the spectral ratio ``min|lambda| / max|lambda|``.

    The ratio is scale invariant, so ``u`` and ``t*u`` always receive the same
    verdict for ``t != 0``.  The zero element has ratio 0.
    """
    thr = u.context.tol_zero if threshold is None else threshold
    lam = spectrum_array(u.coeffs)
    ratio = float(spectral_ratio_array(lam))
    det = slogdet_via_spectrum(u).value
    return ZeroDivisorReport(det_value=det, min_eigen_ratio=ratio, is_zero_divisor=ratio <= thr)


def is_unit(u: Element) -> bool:
    return not is_zero_divisor(u).is_zero_divisor


def inverse_cayley_hamilton(u: Element) -> Element:
    """Inverse of a unit by solving ``x sigma(u) = e_1``.

    Cayley-Hamilton puts ``sigma(u)^-1`` in the span of the powers of
    ``sigma(u)``, so the solution is again an element of R_n and equals the
    first row of ``sigma(u)^-1``.
    """
    if is_zero_divisor(u).is_zero_divisor:
        raise ZeroDivisor(f"{u!r} is a zero divisor")
    e1 = np.zeros(u.n)
    e1[0] = 1.0
    x = np.linalg.solve(sigma(u).T, e1)
    return Element(x, u.context)


# -- R_4 closed forms --------------------------------------------------------


def _require_r4(u: Element) -> None:
    if u.n != 4:
        raise DimensionMismatch(f"closed form is specific to R_4, got n={u.n}")


def r4_det_closed_form(u: Element) -> float:
    _require_r4(u)
    u1, u2, u3, u4 = u.coeffs
    return (u1 * u1 - u3 * u3 + 2 * u2 * u4) ** 2 + (u4 * u4 - u2 * u2 + 2 * u1 * u3) ** 2


def r4_zero_divisor_point(
    s: float, t: float, branch: Literal["I", "II"], ctx: AlgebraContext | None = None
) -> Element:
    """Point ``(s, t)`` on one of the two planes making up the zero divisors of R_4.

    Plane I is where ``u(omega**3)`` vanishes, plane II where ``u(omega)``
    vanishes (``omega = exp(i*pi/4)``).
    """
    ctx = ctx or AlgebraContext(4)
    if ctx.n != 4:
        raise DimensionMismatch(f"zero-divisor planes live in R_4, got n={ctx.n}")
    if branch == "I":
        c = [s, t, -s + SQRT2 * t, -SQRT2 * s + t]
    elif branch == "II":
        c = [s, t, -s - SQRT2 * t, SQRT2 * s + t]
    else:
        raise ValueError(f"branch must be 'I' or 'II', got {branch!r}")
    return Element(np.array(c), ctx)


# -- measure of the zero-divisor set ----------------------------------------


def sample_unit_ball(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    """Uniform points in the closed unit ball of R^n, shape ``(size, n)``."""
    g = rng.standard_normal((size, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = rng.random(size) ** (1.0 / n)
    return g * r[:, None]


def _chunks(samples: int, chunk: int) -> list[int]:
    full, rest = divmod(samples, chunk)
    return [chunk] * full + ([rest] if rest else [])


def estimate_zero_divisor_measure(
    ctx: AlgebraContext,
    samples: int,
    eps: float,
    seed: int = 0,
    workers: int = 1,
) -> float:
    """Fraction of uniform unit-ball points with ``|det sigma(x)| < eps``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sizes = _chunks(samples, CHUNK_SIZE)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def count(job):
        size, ss = job
        pts = sample_unit_ball(np.random.default_rng(ss), size, ctx.n)
        return int(np.count_nonzero(abs_det_array(pts) < eps))

    jobs = list(zip(sizes, seeds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = sum(pool.map(count, jobs))
    else:
        hits = sum(map(count, jobs))
    return hits / samples


def star_shape_check(u: Element, ts: Iterable[float]) -> bool:
    """True iff every ``t*u`` is again a zero divisor (``u`` must be one)."""
    if not is_zero_divisor(u).is_zero_divisor:
        raise NotAZeroDivisor(f"{u!r} is a unit")
    return all(is_zero_divisor(scale(u, float(t))).is_zero_divisor for t in ts)


# -- square roots of +-1 -----------------------------------------------------


def square_roots_of_sign(ctx: AlgebraContext, sign: int) -> list[Element]:
    """All ``v`` in R_n with ``v*v == sign*e_1``.

    ``v**2 == sign`` holds iff every eigenvalue squares to ``sign``.  Real
    input forces ``lambda[n-1-k] == conj(lambda[k])``, so one free choice of
    square root per conjugate pair (plus the real middle eigenvalue when ``n``
    is odd) enumerates the whole solution set.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = ctx.n
    roots = (1.0 + 0j, -1.0 + 0j) if sign == 1 else (1j, -1j)
    pairs = n // 2
    middle: tuple[complex, ...] = ()
    if n % 2:
        middle = tuple(r for r in roots if r.imag == 0)
        if not middle:
            return []
    out = []
    for choice in itertools.product(roots, repeat=pairs):
        for mid in middle or (None,):
            lam = np.empty(n, dtype=complex)
            lam[:pairs] = choice
            lam[n - pairs:] = np.conj(choice)[::-1]
            if mid is not None:
                lam[pairs] = mid
            v = inverse_spectrum(Spectrum(lam, n, ctx), ctx)
            # snap rounding noise so exact solutions such as e_3 print cleanly
            c = np.where(np.abs(v.coeffs) < 1e-15, 0.0, v.coeffs)
            out.append(Element(c, ctx))
    out.sort(key=lambda e: tuple(e.coeffs))
    return out


def square_roots_of_pm1_r4(sign: int, ctx: AlgebraContext | None = None) -> list[Element]:
    ctx = ctx or AlgebraContext(4)
    if ctx.n != 4:
        raise DimensionMismatch(f"expected R_4, got n={ctx.n}")
    return square_roots_of_sign(ctx, sign)


def square_residual(v: Element, sign: int) -> float:
    """``max|v*v - sign*e_1|``."""
    sq = negacyclic_convolve(v.coeffs, v.coeffs)
    sq[0] -= sign
    return float(np.max(np.abs(sq)))
