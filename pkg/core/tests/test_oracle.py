import math
from unittest import mock

import numpy as np
import scipy.integrate
import scipy.special
from django.test import SimpleTestCase
from numpy.polynomial import Polynomial

from core import oracle, polys
from core.algebra import RationalPoly
from core.conf import PrecisionConfig
from core.exceptions import ConfigurationError, DomainError, NonConvergenceError


def reference(f, alpha):
    value, _ = scipy.integrate.quad(
        lambda x: f(x) * x ** alpha * math.exp(-x) / (x + alpha) ** 2, 0, np.inf, epsabs=0, epsrel=1e-12, limit=200
    )
    return value


class WeightedIntegralTests(SimpleTestCase):
    def test_square_of_shift_cancels_denominator(self):
        result = oracle.weighted_integral(RationalPoly((1, 1)) ** 2, 1.0)
        self.assertAlmostEqual(result.value, 1.0, places=10)
        self.assertEqual(result.strategy, oracle.SPLIT_TANH_SINH)
        self.assertLessEqual(result.error, 1e-8)

    def test_constant_against_scipy(self):
        for alpha in (0.5, 1.0, 3.0):
            value = oracle.weighted_integral([1.0], alpha).value
            expected = reference(lambda x: 1.0, alpha)
            self.assertLess(abs(value - expected) / expected, 1e-8, alpha)

    def test_callable_integrand(self):
        value = oracle.weighted_integral(np.cos, 1.5).value
        self.assertLess(abs(value - reference(math.cos, 1.5)), 1e-9)

    def test_inner_products(self):
        first = polys.x1_from_classical(1, 1)
        second = polys.x1_from_classical(2, 1)
        self.assertAlmostEqual(oracle.inner_product(first, first, 1.0).value, 2.0, places=9)
        self.assertLess(abs(oracle.inner_product(first, second, 1.0).value), 1e-9)
        one = Polynomial([1.0])
        self.assertAlmostEqual(
            oracle.inner_product(one, one, 1.0).value, oracle.weighted_integral(one, 1.0).value, places=14
        )

    def test_moment_integrals(self):
        self.assertAlmostEqual(oracle.adjusted_moment_integral(2, 1.0).value, 1.0, places=10)
        self.assertAlmostEqual(oracle.adjusted_moment_integral(3, 1.0).value, 3.0, places=9)
        mu2 = oracle.canonical_moment_integral(2, 1.0).value
        mu0 = oracle.canonical_moment_integral(0, 1.0).value
        self.assertLess(abs(mu2 - 2.0 * mu0) / mu2, 1e-9)

    def test_strategies_agree(self):
        gauss = oracle.QuadratureConfig(strategy=oracle.GAUSS_LAGUERRE, nodes=120)
        for alpha in (1.0, 2.0):
            for k in (0, 3, 6):
                f = Polynomial.basis(k)
                tanh_sinh = oracle.weighted_integral(f, alpha).value
                result = oracle.weighted_integral(f, alpha, quad_config=gauss)
                self.assertEqual(result.strategy, oracle.GAUSS_LAGUERRE)
                self.assertLess(abs(result.value - tanh_sinh) / tanh_sinh, 1e-9, (alpha, k))

    def test_strategy_from_precision_config(self):
        config = PrecisionConfig(quad_strategy=oracle.GAUSS_LAGUERRE)
        self.assertEqual(oracle.weighted_integral([1.0], 1.0, config).strategy, oracle.GAUSS_LAGUERRE)

    def test_non_positive_alpha(self):
        with self.assertRaises(DomainError):
            oracle.weighted_integral([1.0], 0.0)

    def test_non_convergence_is_reported(self):
        quad_config = oracle.QuadratureConfig(levels=2, target_rel_tol=1e-14)
        with self.assertRaises(NonConvergenceError) as caught:
            oracle.weighted_integral([1.0], 1.0, quad_config=quad_config)
        self.assertTrue(math.isfinite(caught.exception.estimate))


class TailBoundTests(SimpleTestCase):
    def test_bound_dominates_the_tail(self):
        for alpha in (0.5, 1.0, 2.0):
            for coeffs in ([1.0], [0.0, 0.0, 0.0, 1.0], [2.0, -1.0, 0.5]):
                f = Polynomial(coeffs)
                actual, _ = scipy.integrate.quad(
                    lambda x: abs(f(x)) * x ** alpha * math.exp(-x) / (x + alpha) ** 2, 20.0, np.inf
                )
                self.assertGreaterEqual(oracle.tail_bound(coeffs, alpha, 20.0), actual, (alpha, coeffs))

    def test_bound_vanishes_for_zero_polynomial(self):
        self.assertEqual(oracle.tail_bound([0.0, 0.0], 1.0, 40.0), 0.0)


class GaussLaguerreNodeTests(SimpleTestCase):
    def test_nodes_match_scipy(self):
        for alpha in (0.5, 2.0):
            points, weights = oracle.gauss_laguerre_nodes(alpha, 20)
            expected_points, expected_weights = scipy.special.roots_genlaguerre(20, alpha)
            np.testing.assert_allclose(np.sort(points), np.sort(expected_points), rtol=1e-10)
            order, expected_order = np.argsort(points), np.argsort(expected_points)
            np.testing.assert_allclose(weights[order], expected_weights[expected_order], rtol=1e-6, atol=1e-14)
            self.assertAlmostEqual(float(np.sum(weights)), math.gamma(alpha + 1.0), places=12)

    def test_nodes_are_cached(self):
        self.assertIs(oracle.gauss_laguerre_nodes(1.0, 16), oracle.gauss_laguerre_nodes(1.0, 16))


class QuadratureConfigTests(SimpleTestCase):
    def test_invalid_values(self):
        with self.assertRaises(ConfigurationError):
            oracle.QuadratureConfig(strategy='simpson')
        with self.assertRaises(ConfigurationError):
            oracle.QuadratureConfig(target_rel_tol=1e-20)
        with self.assertRaises(ConfigurationError):
            oracle.QuadratureConfig(levels=1)

    def test_truncation_point(self):
        self.assertAlmostEqual(oracle.QuadratureConfig(target_rel_tol=1e-10).truncation_point(1.0), 401.0, places=9)
        self.assertAlmostEqual(oracle.QuadratureConfig(target_rel_tol=1e-4).truncation_point(1.0), 161.0, places=9)
        self.assertEqual(oracle.QuadratureConfig(truncation_x_max=50.0).truncation_point(1.0), 50.0)

    def test_from_precision(self):
        config = PrecisionConfig(target_rel_tol=1e-8, quad_max_levels=7, gauss_nodes=40)
        quad_config = oracle.QuadratureConfig.from_precision(config)
        self.assertEqual(quad_config.target_rel_tol, 1e-8)
        self.assertEqual(quad_config.levels, 7)
        self.assertEqual(quad_config.nodes, 40)


class TruncationTests(SimpleTestCase):
    def test_fixed_short_truncation_is_reported(self):
        config = PrecisionConfig(quad_truncation=8.0)
        with self.assertRaises(NonConvergenceError) as caught:
            oracle.canonical_moment_integral(6, 1.0, config)
        self.assertGreater(caught.exception.estimate, 1.0)

    def test_automatic_truncation_is_enlarged(self):
        with mock.patch.object(oracle, 'tail_bound', side_effect=[1.0, 0.0]) as bound:
            result = oracle.weighted_integral([1.0], 1.0)
        first, second = (call.args[2] for call in bound.call_args_list)
        self.assertEqual(second, 2.0 * first)
        self.assertLess(abs(result.value - reference(lambda x: 1.0, 1.0)), 1e-9)

    def test_fixed_truncation_is_never_moved(self):
        quad_config = oracle.QuadratureConfig(truncation_x_max=60.0)
        with mock.patch.object(oracle, 'tail_bound', return_value=1.0) as bound:
            with self.assertRaises(NonConvergenceError):
                oracle.weighted_integral([1.0], 1.0, quad_config=quad_config)
        self.assertEqual(bound.call_count, 1)

    def test_finer_levels_stay_within_reported_error(self):
        for alpha in (0.5, 2.0):
            f = Polynomial([alpha, 1.0]) ** 3
            coarse = oracle.weighted_integral(f, alpha)
            finer_config = oracle.QuadratureConfig(levels=2 * coarse.levels, target_rel_tol=1e-13)
            finer = oracle.weighted_integral(f, alpha, quad_config=finer_config)
            self.assertLessEqual(abs(finer.value - coarse.value), coarse.error, alpha)
