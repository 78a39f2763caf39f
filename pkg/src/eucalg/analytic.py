"""Finite-difference probes for analytic functions on R_n.

Fields are maps ``R^n -> R^n`` evaluated on coefficient arrays of shape
``(..., n)``.  The probes check the axis-path derivative formula
``f'(a) = w**(1-j) * df/dx_j(a)`` with ``w = e_2``, the paired Cauchy-Riemann
system in even dimension, harmonicity of the components, the sphere mean
value property, and growth of nonconstant entire fields.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import AlgebraContext, Element, negacyclic_convolve, poly_eval_array
from .errors import EvaluationFailure, EvenDimension, OddDimension
from .spectral import inverse_via_spectrum
from .zero_divisors import is_zero_divisor

ArrayMap = Callable[[np.ndarray], np.ndarray]

DEFAULT_FD_STEP = 1e-5


@dataclass(frozen=True)
class VectorField:
    """A map on R_n.  ``func`` must accept and return arrays of shape ``(..., n)``
    and be safe to call concurrently."""

    func: ArrayMap
    n: int
    fd_step: float = DEFAULT_FD_STEP
    smoothness_hint: str | None = None
    name: str = "field"

    def eval_array(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        try:
            y = np.asarray(self.func(x), dtype=float)
        except Exception as exc:  # user code: report uniformly
            raise EvaluationFailure(f"{self.name} failed: {exc}") from exc
        if y.shape != x.shape:
            raise EvaluationFailure(f"{self.name} returned shape {y.shape} for input {x.shape}")
        if not np.all(np.isfinite(y)):
            raise EvaluationFailure(f"{self.name} produced non-finite values")
        return y

    def __call__(self, x: Element) -> Element:
        return Element(self.eval_array(x.coeffs), x.context)

    def with_step(self, h: float) -> "VectorField":
        return VectorField(self.func, self.n, h, self.smoothness_hint, self.name)

    @classmethod
    def from_element_map(cls, fn: Callable[[Element], Element], ctx: AlgebraContext, **kw) -> "VectorField":
        """Wrap a scalar ``Element -> Element`` map (evaluated point by point)."""

        def func(x):
            flat = x.reshape(-1, ctx.n)
            out = np.array([fn(Element(row, ctx)).coeffs for row in flat])
            return out.reshape(x.shape)

        return cls(func, ctx.n, **kw)


# -- field catalogue ---------------------------------------------------------


def identity_field(n: int) -> VectorField:
    return VectorField(lambda x: np.array(x, dtype=float), n, smoothness_hint="C2", name="identity")


def constant_field(c: Element) -> VectorField:
    coeffs = c.coeffs
    return VectorField(lambda x: np.broadcast_to(coeffs, np.shape(x)).copy(), c.n, smoothness_hint="C2", name="constant")


def polynomial_field(coeffs: Sequence[Sequence[float]] | np.ndarray, name: str = "poly") -> VectorField:
    """Field ``x -> a_m x^m + ... + a_0`` from coefficient rows ``[a_m, ..., a_0]``."""
    table = np.array(coeffs, dtype=float)
    if table.ndim != 2:
        raise ValueError("polynomial coefficients must be a list of equal-length rows")
    table.setflags(write=False)
    return VectorField(lambda x: poly_eval_array(table, x), table.shape[1], smoothness_hint="C2", name=name)


def monomial_field(n: int, m: int) -> VectorField:
    table = np.zeros((m + 1, n))
    table[0, 0] = 1.0
    return polynomial_field(table, name={2: "square", 3: "cube"}.get(m, f"x^{m}"))


def conjugate2d_field() -> VectorField:
    """``[x1, x2] -> [x1, -x2]``: complex conjugation, nowhere differentiable."""
    flip = np.array([1.0, -1.0])
    return VectorField(lambda x: np.asarray(x, dtype=float) * flip, 2, smoothness_hint="C2", name="conjugate2d")


def field_by_name(name: str, n: int, fd_step: float = DEFAULT_FD_STEP) -> VectorField:
    """Look up ``identity``, ``square``, ``cube``, ``conjugate2d`` or ``poly:<json rows>``."""
    if name == "identity":
        f = identity_field(n)
    elif name == "square":
        f = monomial_field(n, 2)
    elif name == "cube":
        f = monomial_field(n, 3)
    elif name == "conjugate2d":
        if n != 2:
            raise ValueError("conjugate2d is defined on R_2 only")
        f = conjugate2d_field()
    elif name.startswith("poly:"):
        rows = json.loads(name[len("poly:"):])
        rows = [[float(r)] + [0.0] * (n - 1) if not isinstance(r, list) else r for r in rows]
        f = polynomial_field(rows, name=name)
        if f.n != n:
            raise ValueError(f"polynomial rows have length {f.n}, expected {n}")
    else:
        raise ValueError(f"unknown field {name!r}")
    return f.with_step(fd_step)


# -- first derivatives -------------------------------------------------------


def w_power(ctx: AlgebraContext, m: int) -> Element:
    """``e_2**m`` for any integer ``m`` (``e_2**n == -e_1``)."""
    n = ctx.n
    m %= 2 * n
    c = np.zeros(n)
    c[m % n] = -1.0 if m >= n else 1.0
    return Element(c, ctx)


def _check_point(f: VectorField, a: Element) -> None:
    if a.n != f.n:
        raise ValueError(f"point is in R_{a.n}, field acts on R_{f.n}")


def jacobian(f: VectorField, a: Element, h: float | None = None) -> np.ndarray:
    """Central-difference Jacobian ``J[m, i] = df_m/dx_i(a)`` (0-based)."""
    _check_point(f, a)
    h = f.fd_step if h is None else h
    n = a.n
    steps = h * np.eye(n)
    pts = np.concatenate([a.coeffs + steps, a.coeffs - steps])
    vals = f.eval_array(pts)
    return ((vals[:n] - vals[n:]) / (2 * h)).T


def derivative_via_axis(f: VectorField, a: Element, j: int, h: float | None = None) -> Element:
    """``w**(1-j) * df/dx_j(a)`` for the 1-based axis ``j``."""
    if not 1 <= j <= a.n:
        raise IndexError(f"axis {j} outside 1..{a.n}")
    col = jacobian(f, a, h)[:, j - 1]
    return Element(negacyclic_convolve(col, w_power(a.context, 1 - j).coeffs), a.context)


def _axis_derivatives(f: VectorField, a: Element, h: float | None) -> np.ndarray:
    jac = jacobian(f, a, h)
    rows = [negacyclic_convolve(jac[:, j], w_power(a.context, -j).coeffs) for j in range(a.n)]
    return np.array(rows)


def directional_residual(
    f: VectorField, a: Element, probes: int = 10, seed: int = 0, h: float | None = None
) -> float:
    """Largest gap between symmetric difference quotients along random unit-group
    increments ``delta`` and the axis-1 derivative."""
    h = f.fd_step if h is None else h
    rng = np.random.default_rng(seed)
    ref = _axis_derivatives(f, a, h)[0]
    worst = 0.0
    done = 0
    while done < probes:
        d = rng.standard_normal(a.n)
        delta = Element(h * d / np.linalg.norm(d), a.context)
        if is_zero_divisor(delta).is_zero_divisor:
            continue
        two_inv = inverse_via_spectrum(2.0 * delta).coeffs
        vals = f.eval_array(np.stack([a.coeffs + delta.coeffs, a.coeffs - delta.coeffs]))
        q = negacyclic_convolve(vals[0] - vals[1], two_inv)
        worst = max(worst, float(np.max(np.abs(q - ref))))
        done += 1
    return worst


def differentiability_residual(
    f: VectorField, a: Element, directional_probes: int = 0, seed: int = 0, h: float | None = None
) -> float:
    """Max disagreement between the axis-path derivatives over all pairs of axes.

    With ``directional_probes > 0`` the random-increment quotient is checked as
    well; its gap is divided by 10 before being folded in, since inverting a
    small ``delta`` amplifies rounding noise.
    """
    d = _axis_derivatives(f, a, h)
    res = float(np.max(d.max(axis=0) - d.min(axis=0)))
    if directional_probes:
        res = max(res, directional_residual(f, a, directional_probes, seed, h) / 10.0)
    return res


def cauchy_riemann_residual(f: VectorField, a: Element, h: float | None = None) -> float:
    """Largest violation of the paired Cauchy-Riemann equations (``n = 2k``)."""
    if a.n % 2:
        raise OddDimension(f"Cauchy-Riemann pairing needs even n, got {a.n}")
    k = a.n // 2
    jac = jacobian(f, a, h)
    top, bottom = jac[:k], jac[k:]
    r1 = top[:, :k] - bottom[:, k:]   # df_m/dx_i - df_{m+k}/dx_{i+k}
    r2 = bottom[:, :k] + top[:, k:]   # df_{m+k}/dx_i + df_m/dx_{i+k}
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


# -- second derivatives ------------------------------------------------------


def laplacian(f: VectorField, a: Element, h: float | None = None) -> np.ndarray:
    """Per-component Laplacian by central second differences.

    The step is ``sqrt(h) * max(1, |a|_inf)`` to balance truncation against
    rounding in the ``1/step**2`` quotient.
    """
    _check_point(f, a)
    h = f.fd_step if h is None else h
    h2 = math.sqrt(h) * max(1.0, float(np.max(np.abs(a.coeffs))))
    n = a.n
    steps = h2 * np.eye(n)
    pts = np.concatenate([a.coeffs[None, :], a.coeffs + steps, a.coeffs - steps])
    vals = f.eval_array(pts)
    centre, plus, minus = vals[0], vals[1 : n + 1], vals[n + 1 :]
    return ((plus + minus).sum(axis=0) - 2 * n * centre) / h2**2


def square_laplacian_exact(n: int, m: int) -> int:
    """Exact Laplacian of the ``m``-th component of ``x -> x*x`` in odd ``n``.

    Component ``m`` is ``sum_{i+j-1=m} x_i x_j - sum_{i+j-1=m+n} x_i x_j`` and
    each diagonal term ``x_j**2`` contributes ``+-2``.
    """
    if n % 2 == 0:
        raise EvenDimension(f"odd dimension required, got n={n}")
    if n < 3 or not 1 <= m <= n:
        raise ValueError(f"need n >= 3 and 1 <= m <= n, got n={n}, m={m}")
    plus = sum(1 for j in range(1, n + 1) if 2 * j - 1 == m)
    minus = sum(1 for j in range(1, n + 1) if 2 * j - 1 == m + n)
    return 2 * plus - 2 * minus


# -- sphere averages ---------------------------------------------------------


def sphere_points(a: Element, r: float, points: int, seed: int = 0) -> np.ndarray:
    """Uniform samples on the sphere of radius ``r`` about ``a``."""
    if r <= 0:
        raise ValueError("radius must be positive")
    g = np.random.default_rng(seed).standard_normal((points, a.n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return a.coeffs + r * g


@dataclass(frozen=True)
class SphereMean:
    mean: Element
    std_error: np.ndarray


def sphere_statistics(f: VectorField, a: Element, r: float, points: int = 100_000, seed: int = 0) -> SphereMean:
    _check_point(f, a)
    if points < 2:
        raise ValueError("need at least two sphere points")
    vals = f.eval_array(sphere_points(a, r, points, seed))
    # shift by the first sample: exact for constant fields, stabler variance
    shift = vals[0]
    d = vals - shift
    mean = shift + d.mean(axis=0)
    se = d.std(axis=0, ddof=1) / math.sqrt(points)
    return SphereMean(Element(mean, a.context), se)


def sphere_mean(f: VectorField, a: Element, r: float, points: int = 100_000, seed: int = 0) -> Element:
    return sphere_statistics(f, a, r, points, seed).mean


def liouville_probe(f: VectorField, radii: Sequence[float], points: int = 4096, seed: int = 0) -> list[float]:
    """Max Euclidean norm of ``f`` over sampled spheres about the origin.

    The same directions are reused for every radius, so homogeneous fields
    scale exactly.
    """
    g = np.random.default_rng(seed).standard_normal((points, f.n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    out = []
    for r in radii:
        if r <= 0:
            raise ValueError("radii must be positive")
        vals = f.eval_array(r * g)
        out.append(float(np.max(np.linalg.norm(vals, axis=1))))
    return out
