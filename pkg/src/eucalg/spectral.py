"""Spectral (FFT) arithmetic for R_n.

Since ``g**n == -I``, ``sigma(u)`` is diagonalised by the odd powers of
``omega = exp(i*pi/n)``: its eigenvalues are ``lambda_k = u(omega**(2k+1))``
for ``k = 0, ..., n-1`` where ``u(x) = sum_l u_l x**(l-1)``.  Twisting the
coefficients by ``omega**(l-1)`` turns this into a length-``n`` DFT, so
products, determinants and inverses all cost ``O(n log n)``.

Eigenvalue order is fixed: index ``k`` holds ``u(omega**(2k+1))``, hence
``lambda[n-1-k] == conj(lambda[k])`` for real input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import AlgebraContext, Element, _check_same
from .errors import DimensionMismatch, NotConjugateSymmetric, ZeroDivisor

# Non-power-of-two sizes up to this use direct O(n^2) evaluation; larger ones
# go through numpy's general-length FFT.
DIRECT_THRESHOLD = 32

# |log det| beyond this cannot be represented as a finite double.
_LOG_MAX = math.log(np.finfo(float).max)


def _is_pow2(n: int) -> bool:
    return n & (n - 1) == 0


@lru_cache(maxsize=64)
def _twist(n: int) -> np.ndarray:
    t = np.exp(1j * np.pi * np.arange(n) / n)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=64)
def _vandermonde(n: int) -> np.ndarray:
    # W[l, k] = omega**((2k+1) l), exponent reduced mod 2n before exponentiating
    ell = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    w = np.exp(1j * np.pi * (((2 * k + 1) * ell) % (2 * n)) / n)
    w.setflags(write=False)
    return w


def _direct(n: int) -> bool:
    return not _is_pow2(n) and n <= DIRECT_THRESHOLD


def spectrum_array(u: np.ndarray) -> np.ndarray:
    """Eigenvalues of ``sigma(u)`` for coefficient arrays of shape ``(..., n)``."""
    u = np.asarray(u, dtype=float)
    n = u.shape[-1]
    if _direct(n):
        return u @ _vandermonde(n)
    return n * np.fft.ifft(u * _twist(n), axis=-1)


def inverse_spectrum_array(lam: np.ndarray) -> np.ndarray:
    """Complex coefficients whose spectrum is ``lam``; the caller drops the imaginary part."""
    lam = np.asarray(lam, dtype=complex)
    n = lam.shape[-1]
    if _direct(n):
        return (lam @ _vandermonde(n).conj().T) / n
    return np.fft.fft(lam, axis=-1) / n * _twist(n).conj()


@dataclass(frozen=True, eq=False)
class Spectrum:
    values: np.ndarray
    n: int
    context: AlgebraContext | None = None

    def __post_init__(self):
        v = np.array(self.values, dtype=complex, copy=True).reshape(-1)
        if v.shape[0] != self.n:
            raise DimensionMismatch(f"expected {self.n} eigenvalues, got {v.shape[0]}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __mul__(self, other: "Spectrum") -> "Spectrum":
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        return Spectrum(self.values * other.values, self.n, self.context)

    def is_conjugate_symmetric(self, tol: float) -> bool:
        v = self.values
        return bool(np.max(np.abs(v - v[::-1].conj())) <= tol * max(1.0, float(np.max(np.abs(v)))))


def spectrum(u: Element) -> Spectrum:
    return Spectrum(spectrum_array(u.coeffs), u.n, u.context)


def inverse_spectrum(s: Spectrum, ctx: AlgebraContext | None = None) -> Element:
    ctx = ctx or s.context or AlgebraContext(s.n)
    if ctx.n != s.n:
        raise DimensionMismatch(f"spectrum has n={s.n}, context has n={ctx.n}")
    c = inverse_spectrum_array(s.values)
    residue = float(np.max(np.abs(c.imag)))
    if residue > ctx.tol_eq * max(1.0, float(np.max(np.abs(s.values)))):
        raise NotConjugateSymmetric(f"imaginary residue {residue:.3g} after inverse transform")
    return Element(c.real, ctx)


def multiply_fast(u: Element, v: Element) -> Element:
    _check_same(u, v)
    return inverse_spectrum(spectrum(u) * spectrum(v), u.context)


def multiply_fast_array(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Batched fast product on ``(..., n)`` arrays.  Deterministic; no threading."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatch(f"length {u.shape[-1]} vs {v.shape[-1]}")
    return inverse_spectrum_array(spectrum_array(u) * spectrum_array(v)).real


# -- determinants ------------------------------------------------------------


@dataclass(frozen=True)
class SpectralDet:
    """``det sigma(u) == sign * exp(log_abs)``.  ``overflow`` marks values outside double range."""

    sign: float
    log_abs: float
    overflow: bool

    @property
    def value(self) -> float:
        if self.sign == 0.0:
            return 0.0
        if self.overflow:
            return math.copysign(math.inf, self.sign) if self.log_abs > 0 else math.copysign(0.0, self.sign)
        return self.sign * math.exp(self.log_abs)


def _slogdet(lam: np.ndarray) -> SpectralDet:
    mags = np.abs(lam)
    if np.any(mags == 0.0):
        return SpectralDet(0.0, -math.inf, False)
    log_abs = float(np.sum(np.log(mags)))
    # the eigenvalue phases multiply to +-1 for real input
    phase = complex(np.prod(lam / mags))
    sign = 1.0 if phase.real >= 0 else -1.0
    return SpectralDet(sign, log_abs, abs(log_abs) > _LOG_MAX)


def slogdet_via_spectrum(u: Element) -> SpectralDet:
    return _slogdet(spectrum_array(u.coeffs))


def det_via_spectrum(u: Element) -> float:
    return slogdet_via_spectrum(u).value


def abs_det_array(u: np.ndarray) -> np.ndarray:
    """``|det sigma(u)|`` row-wise for ``(..., n)`` arrays."""
    return np.prod(np.abs(spectrum_array(u)), axis=-1)


def spectral_ratio_array(lam: np.ndarray) -> np.ndarray:
    """``min|lambda| / max|lambda|`` along the last axis (0 for the zero element)."""
    mags = np.abs(lam)
    hi = mags.max(axis=-1)
    lo = mags.min(axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0)


def spectral_ratio(u: Element) -> float:
    return float(spectral_ratio_array(spectrum_array(u.coeffs)))


def inverse_via_spectrum(u: Element) -> Element:
    """Multiplicative inverse through the reciprocal spectrum.

    Raises :class:`ZeroDivisor` when any eigenvalue is small relative to the
    largest one (ratio at or below ``tol_zero``); a single tiny eigenvalue can
    hide inside a perfectly ordinary determinant, so the determinant itself is
    not used for this decision.
    """
    lam = spectrum_array(u.coeffs)
    if float(spectral_ratio_array(lam)) <= u.context.tol_zero:
        raise ZeroDivisor(f"{u!r} is a zero divisor")
    return inverse_spectrum(Spectrum(1.0 / lam, u.n, u.context), u.context)
