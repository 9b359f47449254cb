"""Special-function kernel against Rodrigues/beta oracles and rule invariants."""

import math

import numpy as np
import pytest

from scarf_rotator import specfun as sf

from oracles import (
    assoc_legendre_rodrigues,
    jacobi_rodrigues,
    jacobi_weight_mean,
)


class TestJacobiPoly:
    def test_degree_zero_is_one(self):
        for alpha, beta_, x in [(0.0, 0.0, 0.3), (1.55, -0.45, -0.9), (3.0, 2.0, 1.0)]:
            assert sf.jacobi_poly(0, alpha, beta_, x) == 1.0

    def test_degree_one_shifted_parameters(self):
        # P_1^(1-b, 1+b)(x) = 2x - b, the bracket of the t=2, M=1 state
        b = 0.45
        assert sf.jacobi_poly(1, 1 - b, 1 + b, 0.0) == pytest.approx(-0.45, abs=1e-15)
        x = np.linspace(-1, 1, 11)
        np.testing.assert_allclose(sf.jacobi_poly(1, 1 - b, 1 + b, x), 2 * x - b, atol=1e-14)

    def test_legendre_special_case(self):
        # frozen from the Rodrigues oracle: P_2(x) = (3x^2 - 1)/2 at x = 0.3
        assert sf.jacobi_poly(2, 0.0, 0.0, 0.3) == pytest.approx(-0.365, abs=1e-15)

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 5])
    @pytest.mark.parametrize("alpha,beta_", [(0.0, 0.0), (0.55, 1.45), (1.0, 1.0), (-0.45, 0.45)])
    def test_matches_rodrigues_oracle(self, n, alpha, beta_):
        for x in (-0.875, -0.25, 0.0, 0.6, 0.96):
            expected = jacobi_rodrigues(n, alpha, beta_, x)
            assert sf.jacobi_poly(n, alpha, beta_, x) == pytest.approx(expected, abs=1e-12)

    def test_rejects_nonintegrable_weight(self):
        with pytest.raises(ValueError, match="exceed -1"):
            sf.jacobi_poly(2, -1.0, 0.0, 0.5)
        with pytest.raises(ValueError, match="exceed -1"):
            sf.jacobi_poly(2, 0.0, -1.3, 0.5)
        with pytest.raises(ValueError):
            sf.jacobi_poly(-1, 0.0, 0.0, 0.5)

    @pytest.mark.parametrize("alpha,beta_", [(0, 0), (1, 1), (2, 3)])
    def test_orthogonality_integer_weights(self, alpha, beta_):
        # integer exponents make the weighted product a polynomial, so the
        # plain Gauss-Legendre rule of the stated order is exact
        for m, n in [(0, 1), (1, 3), (2, 5), (4, 6)]:
            rule = sf.gauss_legendre(m + n + 2 + alpha + beta_)
            x = rule.nodes
            w = (1 - x) ** alpha * (1 + x) ** beta_
            value = rule.integrate(
                w * sf.jacobi_poly(m, alpha, beta_, x) * sf.jacobi_poly(n, alpha, beta_, x)
            )
            assert abs(value) < 1e-10

    @pytest.mark.parametrize("alpha,beta_", [(0.55, -0.3), (-0.45, 0.45), (1.45, 2.55)])
    def test_orthogonality_fractional_weights(self, alpha, beta_):
        # fractional exponents need the matching Gauss-Jacobi rule
        x, w = sf.gauss_jacobi(16, alpha, beta_)
        for m, n in [(0, 1), (1, 3), (2, 5)]:
            value = np.dot(w, sf.jacobi_poly(m, alpha, beta_, x) * sf.jacobi_poly(n, alpha, beta_, x))
            assert abs(value) < 1e-10

    @pytest.mark.parametrize("n", range(1, 11))
    def test_derivative_matches_finite_differences(self, n):
        alpha, beta_ = 0.55, 1.45
        h = 1e-5
        for x in (-0.6, 0.1, 0.7):
            fd = (sf.jacobi_poly(n, alpha, beta_, x + h) - sf.jacobi_poly(n, alpha, beta_, x - h)) / (2 * h)
            exact = sf.jacobi_poly_deriv(n, alpha, beta_, x)
            assert exact == pytest.approx(fd, rel=1e-6)

    def test_second_derivative_matches_finite_differences(self):
        alpha, beta_, n, x = 0.55, 1.45, 6, 0.3
        h = 1e-4
        fd = (
            sf.jacobi_poly(n, alpha, beta_, x + h)
            - 2 * sf.jacobi_poly(n, alpha, beta_, x)
            + sf.jacobi_poly(n, alpha, beta_, x - h)
        ) / h**2
        assert sf.jacobi_poly_deriv(n, alpha, beta_, x, order=2) == pytest.approx(fd, rel=1e-5)

    def test_table_matches_pointwise_evaluation(self):
        x = np.linspace(-0.95, 0.95, 7)
        table = sf.jacobi_table(8, 0.55, 1.45, x)
        for k in range(8):
            np.testing.assert_allclose(table[k], sf.jacobi_poly(k, 0.55, 1.45, x), rtol=1e-14)


class TestAssocLegendre:
    def test_first_order_at_origin(self):
        # P_1^1(sin theta) = cos theta, so the value at x = 0 is 1
        assert sf.assoc_legendre(1, 1, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_endpoint_value_of_legendre(self):
        for j in range(7):
            assert sf.assoc_legendre(j, 0, 1.0) == pytest.approx(1.0, abs=1e-13)

    def test_rodrigues_value_2_1(self):
        # frozen: P_2^1(x) = 3 x sqrt(1 - x^2) at x = 0.5
        assert sf.assoc_legendre(2, 1, 0.5) == pytest.approx(1.299038105676658, abs=1e-14)

    @pytest.mark.parametrize("j,m", [(0, 0), (1, 1), (2, 1), (3, 2), (4, 0), (5, 3), (6, 6)])
    def test_matches_rodrigues_oracle(self, j, m):
        for x in (-0.75, -0.2, 0.35, 0.9):
            expected = assoc_legendre_rodrigues(j, m, x)
            assert sf.assoc_legendre(j, m, x) == pytest.approx(expected, abs=1e-11)

    def test_negative_m_uses_magnitude(self):
        x = 0.37
        assert sf.assoc_legendre(3, -2, x) == sf.assoc_legendre(3, 2, x)

    def test_rejects_m_above_degree(self):
        with pytest.raises(ValueError, match="exceeds"):
            sf.assoc_legendre(2, 3, 0.1)

    @pytest.mark.parametrize("j", range(7))
    def test_interior_root_count(self, j):
        # P_j^|M| has exactly j - |M| sign changes inside (-1, 1); even point
        # count keeps symmetric roots like x = 0 off the grid
        x = np.linspace(-0.9999, 0.9999, 20000)
        for m in range(j + 1):
            values = sf.assoc_legendre(j, m, x)
            roots = int(np.sum(np.sign(values[:-1]) * np.sign(values[1:]) < 0))
            assert roots == j - m


class TestGaussLegendre:
    def test_order_one_is_midpoint_rule(self):
        rule = sf.gauss_legendre(1)
        np.testing.assert_allclose(rule.nodes, [0.0], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [2.0], atol=1e-14)

    def test_order_two_closed_form(self):
        rule = sf.gauss_legendre(2)
        np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], atol=1e-14)

    @pytest.mark.parametrize("order", [1, 2, 5, 16, 64])
    def test_rule_invariants(self, order):
        rule = sf.gauss_legendre(order)
        assert abs(rule.weights.sum() - 2.0) < 1e-13
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.all(np.abs(rule.nodes) < 1.0)
        assert np.all(rule.weights > 0)
        # symmetry about the origin
        assert np.max(np.abs(rule.nodes + rule.nodes[::-1])) < 1e-13
        # monomial exactness up to degree 2*order - 1
        for k in range(2 * order):
            exact = 2.0 / (k + 1) if k % 2 == 0 else 0.0
            assert abs(rule.integrate(rule.nodes**k) - exact) < 1e-12

    def test_order_64_high_degree(self):
        rule = sf.gauss_legendre(64)
        assert abs(rule.integrate(rule.nodes**127)) < 1e-12

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValueError):
            sf.gauss_legendre(0)

    def test_rule_is_immutable(self):
        rule = sf.gauss_legendre(4)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.5


class TestGaussJacobi:
    @pytest.mark.parametrize("alpha,beta_", [(-0.45, 0.45), (0.55, 1.45), (2.0, 0.0), (-0.9, 0.9)])
    def test_mass_and_mean_against_beta_oracle(self, alpha, beta_):
        x, w = sf.gauss_jacobi(24, alpha, beta_)
        mass = 2.0 ** (alpha + beta_ + 1.0) * sf.beta(alpha + 1.0, beta_ + 1.0)
        assert w.sum() == pytest.approx(mass, rel=1e-13)
        assert np.dot(w, x) / w.sum() == pytest.approx(jacobi_weight_mean(alpha, beta_), abs=1e-13)

    def test_reduces_to_legendre(self):
        x, w = sf.gauss_jacobi(8, 0.0, 0.0)
        rule = sf.gauss_legendre(8)
        np.testing.assert_allclose(x, rule.nodes, atol=1e-14)
        np.testing.assert_allclose(w, rule.weights, atol=1e-14)

    def test_weighted_monomial_exactness(self):
        # int x^2 (1-x)^a (1+x)^b dx against 40-digit-free recurrence:
        # second moment from mean and the three-term diagonal is awkward, so
        # compare two rules of different order instead (both exact)
        alpha, beta_ = 0.55, -0.3
        x1, w1 = sf.gauss_jacobi(6, alpha, beta_)
        x2, w2 = sf.gauss_jacobi(19, alpha, beta_)
        for k in range(8):
            assert np.dot(w1, x1**k) == pytest.approx(np.dot(w2, x2**k), abs=1e-13)


class TestGammaBeta:
    def test_log_gamma_known_values(self):
        assert sf.log_gamma(1.0) == 0.0
        assert sf.log_gamma(2.0) == 0.0
        assert sf.log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-14)

    def test_beta_uniform(self):
        assert sf.beta(1.0, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_gamma_functional_equation(self):
        for x in (0.3, 1.7, 4.2, 9.5):
            assert sf.log_gamma(x + 1.0) == pytest.approx(sf.log_gamma(x) + math.log(x), rel=1e-13)

    def test_beta_symmetry_and_recursion(self):
        assert sf.beta(2.5, 0.7) == pytest.approx(sf.beta(0.7, 2.5), rel=1e-14)
        # B(a+1, b) = B(a, b) * a / (a + b)
        a, b = 1.3, 0.55
        assert sf.beta(a + 1, b) == pytest.approx(sf.beta(a, b) * a / (a + b), rel=1e-13)

    def test_rejects_nonpositive_arguments(self):
        with pytest.raises(ValueError):
            sf.log_gamma(0.0)
        with pytest.raises(ValueError):
            sf.beta(-1.0, 2.0)
