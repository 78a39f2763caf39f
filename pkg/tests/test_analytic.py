import numpy as np
import pytest

from eucalg.core import AlgebraContext, Element, multiply_naive
from eucalg.errors import EvaluationFailure, EvenDimension, OddDimension
from eucalg.analytic import (
    VectorField,
    cauchy_riemann_residual,
    conjugate2d_field,
    constant_field,
    derivative_via_axis,
    differentiability_residual,
    directional_residual,
    field_by_name,
    identity_field,
    jacobian,
    laplacian,
    liouville_probe,
    monomial_field,
    polynomial_field,
    sphere_mean,
    sphere_statistics,
    square_laplacian_exact,
    w_power,
)

import oracles


def cubic_plus_e2x(n):
    # x^3 + e_2 x
    rows = np.zeros((4, n))
    rows[0, 0] = 1.0
    rows[2, 1] = 1.0
    return polynomial_field(rows, name="x^3+e2x")


class TestFields:
    def test_square_matches_product(self, rng):
        ctx = AlgebraContext(5)
        a = ctx.random(rng)
        assert monomial_field(5, 2)(a).allclose(multiply_naive(a, a))

    def test_polynomial_rows(self, rng):
        ctx = AlgebraContext(4)
        a = ctx.random(rng)
        c = [[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 3]]
        expect = multiply_naive(Element(c[0], ctx), multiply_naive(a, a)) + 2.0 * a + Element(c[2], ctx)
        assert polynomial_field(c)(a).allclose(expect)

    def test_by_name(self, rng):
        a = AlgebraContext(3).random(rng)
        assert field_by_name("identity", 3)(a).allclose(a)
        assert field_by_name("cube", 3)(a).allclose(a**3)
        assert field_by_name("poly:[1, 0, -1]", 3)(a).allclose(a * a - AlgebraContext(3).one())
        assert field_by_name("square", 3, fd_step=1e-4).fd_step == 1e-4

    @pytest.mark.parametrize("name,n", [("nope", 2), ("conjugate2d", 3), ("poly:[[1,0]]", 3)])
    def test_by_name_rejects(self, name, n):
        with pytest.raises(ValueError):
            field_by_name(name, n)

    def test_evaluation_failure_wraps(self):
        def bad(x):
            raise RuntimeError("boom")

        with pytest.raises(EvaluationFailure):
            VectorField(bad, 2)(AlgebraContext(2).one())

    def test_non_finite(self):
        f = VectorField(lambda x: np.where(x < 0, np.inf, x), 2)
        with pytest.raises(EvaluationFailure):
            f(Element([-1.0, 1.0], AlgebraContext(2)))

    def test_shape_check(self):
        f = VectorField(lambda x: x[..., :1], 2)
        with pytest.raises(EvaluationFailure):
            f(AlgebraContext(2).one())

    def test_from_element_map(self, rng):
        ctx = AlgebraContext(4)
        f = VectorField.from_element_map(lambda u: u * u, ctx)
        a = ctx.random(rng)
        assert f(a).allclose(a * a)


class TestWPowers:
    def test_wraps_with_sign(self, r4):
        assert w_power(r4, 4).allclose(-r4.one())
        assert w_power(r4, -1).allclose(-r4.basis(4))
        assert w_power(r4, 0).allclose(r4.one())

    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_matches_repeated_product(self, n):
        ctx = AlgebraContext(n)
        w = ctx.basis(2)
        for m in range(2 * n + 2):
            assert w_power(ctx, m).allclose(w**m)
            assert (w_power(ctx, m) * w_power(ctx, -m)).allclose(ctx.one())


class TestAxisDerivative:
    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_identity(self, r4, rng, j):
        assert np.allclose(derivative_via_axis(identity_field(4), r4.random(rng), j).coeffs, [1, 0, 0, 0], atol=1e-9)

    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_square_r3_every_axis(self, rng, j):
        a = AlgebraContext(3).random(rng)
        d = derivative_via_axis(monomial_field(3, 2), a, j)
        assert np.allclose(d.coeffs, 2 * a.coeffs, atol=1e-8)

    def test_path_independence_r4(self, r4, rng):
        f = monomial_field(4, 2)
        a = r4.random(rng)
        d1, d2 = derivative_via_axis(f, a, 1), derivative_via_axis(f, a, 2)
        assert np.max(np.abs(d1.coeffs - d2.coeffs)) < 1e-8

    def test_bad_axis(self, r4):
        with pytest.raises(IndexError):
            derivative_via_axis(identity_field(4), r4.one(), 5)

    def test_jacobian_of_square_is_sigma(self, r4, rng):
        # d(x*x)/dx acts as multiplication by 2a, i.e. J = (2 sigma(a))^T
        a = r4.random(rng)
        assert np.allclose(jacobian(monomial_field(4, 2), a), 2 * np.array(oracles.table_sigma(a.coeffs)).T, atol=1e-8)


class TestDifferentiability:
    def test_identity(self, r4, rng):
        assert differentiability_residual(identity_field(4), r4.random(rng)) <= 1e-9

    def test_cube_r4(self, r4, rng):
        for _ in range(5):
            assert differentiability_residual(monomial_field(4, 3), r4.random(rng)) <= 1e-6

    def test_conjugation(self, rng):
        a = AlgebraContext(2).random(rng)
        assert differentiability_residual(conjugate2d_field(), a) == pytest.approx(2.0, abs=1e-6)

    def test_directional_probe_analytic(self, r4, rng):
        a = r4.random(rng)
        assert directional_residual(monomial_field(4, 2), a, probes=10, seed=1) < 1e-5
        assert differentiability_residual(monomial_field(4, 2), a, directional_probes=10) < 1e-6

    def test_directional_probe_conjugation(self, rng):
        a = AlgebraContext(2).random(rng)
        assert directional_residual(conjugate2d_field(), a, probes=10, seed=1) > 0.5

    def test_odd_dimension_square(self, rng):
        # x^2 stays differentiable in odd n; only harmonicity fails there
        assert differentiability_residual(monomial_field(5, 2), AlgebraContext(5).random(rng)) <= 1e-6


class TestCauchyRiemann:
    def test_identity(self, r4, rng):
        assert cauchy_riemann_residual(identity_field(4), r4.random(rng)) <= 1e-10

    @pytest.mark.parametrize("n", [4, 6])
    def test_polynomials(self, n, rng):
        ctx = AlgebraContext(n)
        for f in (monomial_field(n, 2), cubic_plus_e2x(n)):
            assert cauchy_riemann_residual(f, ctx.random(rng)) <= 1e-6

    def test_conjugation(self, rng):
        a = AlgebraContext(2).random(rng)
        assert cauchy_riemann_residual(conjugate2d_field(), a) == pytest.approx(2.0, abs=1e-6)

    def test_odd(self, rng):
        with pytest.raises(OddDimension):
            cauchy_riemann_residual(identity_field(3), AlgebraContext(3).one())

    def test_richardson(self, r4, rng):
        # at h ~ 1e-4 truncation dominates rounding, so halving h quarters the residual
        f = cubic_plus_e2x(4)
        a = r4.random(rng)
        ratio = cauchy_riemann_residual(f, a, h=1e-4) / cauchy_riemann_residual(f, a, h=5e-5)
        assert 3.9 <= ratio <= 4.1

    def test_richardson_differentiability(self, r4, rng):
        f = cubic_plus_e2x(4)
        a = r4.random(rng)
        ratio = differentiability_residual(f, a, h=1e-3) / differentiability_residual(f, a, h=5e-4)
        assert 3.9 <= ratio <= 4.1


class TestLaplacian:
    def test_identity(self, r4, rng):
        assert np.allclose(laplacian(identity_field(4), r4.random(rng)), 0, atol=1e-8)

    @pytest.mark.parametrize("m", [2, 3])
    def test_harmonic_r4(self, r4, rng, m):
        assert np.max(np.abs(laplacian(monomial_field(4, m), r4.random(rng)))) <= 1e-4

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_odd_square_converges_to_exact(self, n, rng):
        lap = laplacian(monomial_field(n, 2), AlgebraContext(n).random(rng))
        exact = [square_laplacian_exact(n, m) for m in range(1, n + 1)]
        assert np.allclose(lap, exact, atol=1e-3)


class TestSquareLaplacianExact:
    def test_r3(self):
        assert [square_laplacian_exact(3, m) for m in (1, 2, 3)] == [2, -2, 2]

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_matches_symbolic(self, n):
        assert [square_laplacian_exact(n, m) for m in range(1, n + 1)] == oracles.symbolic_laplacians_of_square(n)

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
    def test_never_zero(self, n):
        assert all(square_laplacian_exact(n, m) != 0 for m in range(1, n + 1))

    def test_closed_formula_only_agrees_at_m1(self):
        # the "m+1 for odd m, -m-2k for even m" formula, n = 2k-1
        n, k = 3, 2
        formula = {m: (m + 1 if m % 2 else -m - 2 * k) for m in (1, 2, 3)}
        agree = [m for m in (1, 2, 3) if formula[m] == square_laplacian_exact(n, m)]
        assert agree == [1]

    def test_even(self):
        with pytest.raises(EvenDimension):
            square_laplacian_exact(4, 1)

    @pytest.mark.parametrize("m", [0, 4])
    def test_bad_component(self, m):
        with pytest.raises(ValueError):
            square_laplacian_exact(3, m)


class TestSphereMean:
    def test_constant_exact(self, r4, rng):
        c = r4.random(rng)
        assert np.array_equal(sphere_mean(constant_field(c), r4.random(rng), 1.3, points=1000).coeffs, c.coeffs)

    @pytest.mark.parametrize("r", [0.1, 1.0, 5.0])
    def test_identity_at_e1(self, r4, r):
        st = sphere_statistics(identity_field(4), r4.one(), r, points=20_000, seed=2)
        assert np.all(np.abs(st.mean.coeffs - [1, 0, 0, 0]) <= 3 * st.std_error)

    def test_square_at_origin(self, r4):
        st = sphere_statistics(monomial_field(4, 2), r4.zero(), 1.0, points=100_000, seed=5)
        assert np.all(np.abs(st.mean.coeffs) <= 3 * st.std_error)

    def test_square_odd_dimension_biased(self):
        # non-harmonic components: the sphere average of x^2 at 0 is r^2/n * (exact laplacian)/2
        ctx = AlgebraContext(3)
        st = sphere_statistics(monomial_field(3, 2), ctx.zero(), 1.0, points=100_000, seed=5)
        assert np.allclose(st.mean.coeffs, np.array([2, -2, 2]) / 6, atol=5 * st.std_error.max())

    def test_deterministic(self, r4):
        f = monomial_field(4, 3)
        assert np.array_equal(sphere_mean(f, r4.one(), 0.5, 1000, seed=3).coeffs, sphere_mean(f, r4.one(), 0.5, 1000, seed=3).coeffs)

    def test_bad_radius(self, r4):
        with pytest.raises(ValueError):
            sphere_mean(identity_field(4), r4.one(), 0.0)


class TestLiouville:
    def test_constant_flat(self, r4, rng):
        vals = liouville_probe(constant_field(r4.random(rng)), [1, 2, 4, 8])
        assert max(vals) - min(vals) == 0.0

    def test_identity(self):
        assert np.allclose(liouville_probe(identity_field(4), [1, 2, 4]), [1, 2, 4])

    def test_square_growth(self):
        lo, hi = liouville_probe(monomial_field(4, 2), [1, 2])
        assert hi / lo == pytest.approx(4.0)

    def test_strictly_growing(self):
        vals = liouville_probe(cubic_plus_e2x(6), [0.5, 1, 2, 4, 8])
        assert all(b > a for a, b in zip(vals, vals[1:]))
