import math

import mpmath
import numpy as np
import scipy.integrate
import scipy.special
from django.test import SimpleTestCase

from core import specfun
from core.conf import PrecisionConfig
from core.exceptions import DomainError, SpecialFunctionOverflow


def rel_err(value, expected):
    return abs(float(value) - float(expected)) / abs(float(expected))


A_GRID = [float(a) for a in np.arange(0.5, 5.01, 0.5)]
X_GRID = [0.1] + [float(x) for x in np.arange(0.5, 5.01, 0.5)]


class GammaTests(SimpleTestCase):
    def test_integer_arguments_are_exact_factorials(self):
        for n in range(1, 172):
            self.assertEqual(specfun.gamma(n), float(math.factorial(n - 1)), n)

    def test_matches_mpmath_across_the_double_range(self):
        points = [0.1, 0.25, 0.5, 0.9, 1.5, 3.7, 10.2, 50.5, 120.25]
        points += [float(x) for x in np.linspace(100.05, 169.95, 700)]
        for x in points:
            with mpmath.workdps(40):
                expected = mpmath.gamma(mpmath.mpf(x))
            self.assertLess(rel_err(specfun.gamma(x), expected), 1e-13, x)

    def test_functional_equation(self):
        for x in np.arange(0.1, 20.0, 0.1):
            x = float(x)
            self.assertLess(rel_err(specfun.gamma(x + 1.0), x * specfun.gamma(x)), 1e-13, x)

    def test_half_is_sqrt_pi(self):
        self.assertAlmostEqual(specfun.gamma(0.5), math.sqrt(math.pi), places=14)

    def test_rejects_non_positive_arguments(self):
        for x in (0.0, -1.0, -2.5, float('nan')):
            with self.assertRaises(DomainError):
                specfun.gamma(x)

    def test_overflow_is_reported(self):
        with self.assertRaises(SpecialFunctionOverflow):
            specfun.gamma(172.5)

    def test_extended_precision_returns_mpf(self):
        config = PrecisionConfig(extended_precision=True, extended_dps=40)
        value = specfun.gamma(0.5, config)
        self.assertEqual(type(value).__name__, 'mpf')
        self.assertTrue(str(value).startswith('1.77245385090551602729816748334'))


class ExpIntegralTests(SimpleTestCase):
    def test_integer_orders_match_scipy(self):
        for n in (1, 2, 3, 5):
            for x in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0):
                self.assertLess(rel_err(specfun.exp_integral(n, x), scipy.special.expn(n, x)), 1e-11, (n, x))

    def test_fractional_orders_match_mpmath(self):
        for a in (0.5, 1.5, 2.5, 3.2):
            for x in (0.1, 0.7, 1.0, 2.5, 10.0):
                self.assertLess(rel_err(specfun.exp_integral(a, x), mpmath.expint(a, x)), 1e-11, (a, x))

    def test_order_zero_is_closed_form(self):
        for x in (0.5, 1.0, 2.0):
            self.assertLess(rel_err(specfun.exp_integral(0, x), math.exp(-x) / x), 1e-13)

    def test_non_positive_orders_match_mpmath(self):
        for a in (-2.5, -1.0, -0.5):
            for x in (0.3, 1.0, 4.0):
                self.assertLess(rel_err(specfun.exp_integral(a, x), mpmath.expint(a, x)), 1e-11, (a, x))

    def test_recurrence_residual(self):
        for a in A_GRID:
            for x in X_GRID:
                residual = ((a - 1) * specfun.exp_integral(a, x) - math.exp(-x)
                            + x * specfun.exp_integral(a - 1, x))
                self.assertLessEqual(abs(residual), 1e-11 * math.exp(-x), (a, x))

    def test_scaled_form_survives_large_x(self):
        value = specfun.scaled_exp_integral(2.0, 800.0)
        expected = mpmath.exp(800) * mpmath.expint(2, 800)
        self.assertLess(rel_err(value, expected), 1e-12)

    def test_switch_point_does_not_change_values(self):
        series = PrecisionConfig(expint_switch=5.0)
        fraction = PrecisionConfig(expint_switch=0.5)
        for a in (0.5, 2.0, 3.3):
            for x in (0.8, 1.5, 3.0):
                self.assertLess(rel_err(specfun.exp_integral(a, x, series), specfun.exp_integral(a, x, fraction)),
                                1e-10, (a, x))

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            specfun.exp_integral(1.0, 0.0)
        with self.assertRaises(DomainError):
            specfun.exp_integral(1.0, -2.0)


class IncompleteGammaTests(SimpleTestCase):
    def test_matches_mpmath_for_any_real_order(self):
        for a in (-1.5, -0.5, 0.5, 2.5, 4.0):
            for x in (0.3, 1.0, 3.0):
                self.assertLess(rel_err(specfun.upper_incomplete_gamma(a, x), mpmath.gammainc(a, x)), 1e-10, (a, x))

    def test_matches_scipy_for_positive_order(self):
        for a in (0.5, 1.0, 3.5):
            for x in (0.2, 2.0, 7.0):
                expected = scipy.special.gammaincc(a, x) * scipy.special.gamma(a)
                self.assertLess(rel_err(specfun.upper_incomplete_gamma(a, x), expected), 1e-10, (a, x))

    def test_exp_integral_relation(self):
        for a in A_GRID:
            for x in X_GRID:
                via_gamma = x ** (a - 1) * specfun.upper_incomplete_gamma(1 - a, x)
                self.assertLess(rel_err(via_gamma, specfun.exp_integral(a, x)), 1e-10, (a, x))
        for a, x in ((3.2, 2.5), (-0.5, 1.5)):
            via_gamma = x ** (a - 1) * specfun.upper_incomplete_gamma(1 - a, x)
            self.assertLess(rel_err(via_gamma, specfun.exp_integral(a, x)), 1e-10, (a, x))


class WeightedBetaIntegralTests(SimpleTestCase):
    def test_matches_brute_force_quadrature(self):
        for alpha, beta in ((1.0, 0.5), (2.0, 1.0), (0.5, 2.0), (3.0, 0.0)):
            expected, _ = scipy.integrate.quad(
                lambda x: math.exp(-x) * x ** beta / (x + alpha), 0, np.inf, epsabs=0, epsrel=1e-12
            )
            self.assertLess(rel_err(specfun.weighted_beta_integral(alpha, beta), expected), 1e-8, (alpha, beta))

    def test_rejects_beta_at_or_below_minus_one(self):
        with self.assertRaises(DomainError):
            specfun.weighted_beta_integral(1.0, -1.0)
