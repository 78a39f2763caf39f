"""Exact construction of the Euclidean algebra R_n.

Elements are length-``n`` real coefficient vectors ``[u_1, ..., u_n]`` with
``e_1`` the multiplicative identity.  The product is the negacyclic
convolution induced by the generator ``g`` with ``g**n == -I``; each element
``u`` is represented by the matrix ``sigma(u) = sum_l u_l g**(l-1)`` whose
first row is ``u`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotNegacyclic

SigmaMatrix = np.ndarray


@dataclass(frozen=True)
class AlgebraContext:
    """The ambient algebra R_n together with its numeric tolerances.

    ``tol_eq`` is a relative tolerance for equality checks (scaled by the
    magnitude of the operands).  ``tol_zero`` is the threshold on the spectral
    ratio ``min|lambda| / max|lambda|`` at or below which an element counts as
    a zero divisor.
    """

    n: int
    tol_eq: float = 1e-9
    tol_zero: float = 1e-9

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n!r}")
        if not (self.tol_eq > 0 and self.tol_zero > 0):
            raise ValueError("tolerances must be positive")

    def element(self, coeffs: Iterable[float]) -> "Element":
        return Element(np.asarray(coeffs, dtype=float), self)

    def zero(self) -> "Element":
        return Element(np.zeros(self.n), self)

    def one(self) -> "Element":
        return self.basis(1)

    def basis(self, index: int) -> "Element":
        """Unit vector ``e_index`` (1-based, as in the usual notation)."""
        if not 1 <= index <= self.n:
            raise IndexError(f"basis index {index} outside 1..{self.n}")
        c = np.zeros(self.n)
        c[index - 1] = 1.0
        return Element(c, self)

    def random(self, rng: np.random.Generator, scale: float = 1.0) -> "Element":
        return Element(scale * rng.standard_normal(self.n), self)

    def close(self, x, y, scale: float = 1.0) -> bool:
        """Max-norm comparison with tolerance ``tol_eq * max(1, scale)``."""
        a = x.coeffs if isinstance(x, Element) else np.asarray(x)
        b = y.coeffs if isinstance(y, Element) else np.asarray(y)
        return bool(np.max(np.abs(a - b)) <= self.tol_eq * max(1.0, scale))


@dataclass(frozen=True, eq=False)
class Element:
    """An element ``u = sum u_l e_l`` of R_n.  Immutable."""

    coeffs: np.ndarray
    context: AlgebraContext

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float, copy=True).reshape(-1)
        if c.shape[0] != self.context.n:
            raise DimensionMismatch(
                f"expected {self.context.n} coefficients, got {c.shape[0]}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.context.n

    def __len__(self):
        return self.context.n

    def __iter__(self):
        return iter(self.coeffs.tolist())

    def __repr__(self):
        body = ", ".join(f"{c:.6g}" for c in self.coeffs)
        return f"Element(n={self.n}, [{body}])"

    def __add__(self, other):
        if isinstance(other, Element):
            return add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Element):
            return add(self, negate(other))
        return NotImplemented

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply_naive(self, other)
        if isinstance(other, (int, float, np.integer, np.floating)):
            return scale(self, float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return scale(self, float(other))
        return NotImplemented

    def __pow__(self, m: int):
        return power(self, m)

    def allclose(self, other: "Element", scale: float = 1.0) -> bool:
        _check_same(self, other)
        return self.context.close(self, other, scale)

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": self.coeffs.tolist()}

    @classmethod
    def from_json(cls, data: dict, context: AlgebraContext | None = None) -> "Element":
        n = int(data["n"])
        ctx = context if context is not None else AlgebraContext(n)
        if ctx.n != n:
            raise DimensionMismatch(f"element has n={n}, context has n={ctx.n}")
        return cls(np.asarray(data["coeffs"], dtype=float), ctx)


def _check_same(u: Element, v: Element) -> None:
    if u.context.n != v.context.n:
        raise DimensionMismatch(f"R_{u.context.n} vs R_{v.context.n}")


# -- the representation ------------------------------------------------------


@lru_cache(maxsize=64)
def negacyclic_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Index and sign tables with ``sigma(u)[r, c] == sign[r, c] * u[idx[r, c]]``."""
    r = np.arange(n)[:, None]
    c = np.arange(n)[None, :]
    d = c - r
    idx = np.where(d >= 0, d, n + d)
    sign = np.where(d >= 0, 1.0, -1.0)
    idx.setflags(write=False)
    sign.setflags(write=False)
    return idx, sign


def generator_power(ctx: AlgebraContext, ell: int) -> SigmaMatrix:
    """Matrix of ``g**ell``; exponents are reduced mod ``2n`` using ``g**n == -I``."""
    n = ctx.n
    ell = int(ell) % (2 * n)
    flip = -1.0 if ell >= n else 1.0
    k = ell % n
    m = np.zeros((n, n))
    # block form [[O, I_{n-k}], [-I_k, O]]
    m[np.arange(n - k), np.arange(k, n)] = 1.0
    m[np.arange(n - k, n), np.arange(k)] = -1.0
    return flip * m


def sigma(u: Element) -> SigmaMatrix:
    idx, sign = negacyclic_tables(u.n)
    return sign * u.coeffs[idx]


def sigma_array(u: np.ndarray) -> np.ndarray:
    """Batched :func:`sigma` on raw coefficient arrays of shape ``(..., n)``."""
    u = np.asarray(u, dtype=float)
    idx, sign = negacyclic_tables(u.shape[-1])
    return sign * u[..., idx]


def sigma_inverse(m: SigmaMatrix, ctx: AlgebraContext | None = None) -> Element:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotNegacyclic(f"expected a square matrix, got shape {m.shape}")
    if ctx is None:
        ctx = AlgebraContext(m.shape[0])
    elif ctx.n != m.shape[0]:
        raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, context has n={ctx.n}")
    row = m[0].copy()
    rebuilt = sigma_array(row)
    if np.max(np.abs(rebuilt - m)) > ctx.tol_eq * max(1.0, float(np.max(np.abs(m)))):
        raise NotNegacyclic("matrix does not have negacyclic structure")
    return Element(row, ctx)


# -- linear structure --------------------------------------------------------


def add(u: Element, v: Element) -> Element:
    _check_same(u, v)
    return Element(u.coeffs + v.coeffs, u.context)


def scale(u: Element, c: float) -> Element:
    return Element(c * u.coeffs, u.context)


def negate(u: Element) -> Element:
    return Element(-u.coeffs, u.context)


# -- multiplication ----------------------------------------------------------


def negacyclic_convolve(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Product of coefficient arrays in ``R[x]/(x^n + 1)``.

    One-dimensional inputs go through a direct convolution; stacked inputs of
    shape ``(..., n)`` are multiplied row-wise as ``u @ sigma(v)``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    n = u.shape[-1]
    if v.shape[-1] != n:
        raise DimensionMismatch(f"length {n} vs {v.shape[-1]}")
    if u.ndim == 1 and v.ndim == 1:
        full = np.convolve(u, v)
        out = full[:n].copy()
        out[: n - 1] -= full[n:]
        return out
    return np.einsum("...i,...ij->...j", u, sigma_array(v))


def multiply_naive(u: Element, v: Element) -> Element:
    _check_same(u, v)
    return Element(negacyclic_convolve(u.coeffs, v.coeffs), u.context)


def power(u: Element, m: int) -> Element:
    """``u**m`` by binary exponentiation; ``u**0 == e_1``."""
    if m < 0:
        raise ValueError("exponent must be non-negative")
    result = u.context.one()
    base = u
    while m:
        if m & 1:
            result = multiply_naive(result, base)
        m >>= 1
        if m:
            base = multiply_naive(base, base)
    return result


def poly_eval(coeffs: Sequence[Element], x: Element) -> Element:
    """Evaluate ``a_m x^m + ... + a_1 x + a_0`` given ``[a_m, ..., a_0]`` (Horner)."""
    if len(coeffs) == 0:
        return x.context.zero()
    acc = coeffs[0]
    _check_same(acc, x)
    for a in coeffs[1:]:
        _check_same(a, x)
        acc = add(multiply_naive(acc, x), a)
    return acc


def poly_eval_array(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Horner evaluation on raw arrays: ``coeffs`` is ``(m+1, n)``, ``x`` is ``(..., n)``."""
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.asarray(x, dtype=float)
    acc = np.broadcast_to(coeffs[0], x.shape).copy()
    for a in coeffs[1:]:
        acc = negacyclic_convolve(acc, x) + a
    return acc


# -- metric quantities -------------------------------------------------------


def det_lu(u: Element) -> float:
    """``det sigma(u)`` through LU factorisation with partial pivoting."""
    return float(np.linalg.det(sigma(u)))


def algebra_norm(u: Element) -> float:
    """``|det sigma(u)|``.  Multiplicative, homogeneous of degree ``n``."""
    return abs(det_lu(u))


def euclidean_distance(x: Element, a: Element) -> float:
    _check_same(x, a)
    return math.sqrt(float(np.sum((x.coeffs - a.coeffs) ** 2)))
