from fractions import Fraction

from django.test import SimpleTestCase

from core.algebra import ALPHA, RationalPoly, SymbolicMoment, binomial

X = RationalPoly.identity()


class RationalPolyTests(SimpleTestCase):
    def test_trailing_zeros_are_stripped(self):
        p = RationalPoly((1, 2, 0, 0))
        self.assertEqual(p.degree, 1)
        self.assertEqual(RationalPoly((0, 0)).degree, -1)
        self.assertTrue(RationalPoly().is_zero())

    def test_arithmetic(self):
        p = X + 1
        q = X - 1
        self.assertEqual(p * q, X ** 2 - 1)
        self.assertEqual(p + q, 2 * X)
        self.assertEqual(3 - p, RationalPoly((2, -1)))
        self.assertEqual(p / 2, RationalPoly((Fraction(1, 2), Fraction(1, 2))))

    def test_divmod_by_linear_factor(self):
        quotient, remainder = divmod(X ** 3 - 2 * X + 5, X + 2)
        self.assertEqual(quotient, X ** 2 - 2 * X + 2)
        self.assertEqual(remainder, RationalPoly.constant(1))

    def test_exact_div_rejects_remainders(self):
        self.assertEqual((X ** 2 - 1).exact_div(X - 1), X + 1)
        with self.assertRaises(ArithmeticError):
            (X ** 2 + 1).exact_div(X - 1)

    def test_derivative_and_evaluation(self):
        p = RationalPoly((1, 2, 3))
        self.assertEqual(p.deriv(), RationalPoly((2, 6)))
        self.assertEqual(p.deriv(2), RationalPoly.constant(6))
        self.assertEqual(p(Fraction(1, 2)), Fraction(11, 4))
        self.assertEqual(p(X + 1), RationalPoly((6, 8, 3)))

    def test_taylor_shift(self):
        p = RationalPoly((1, 2, 3))
        shift = Fraction(-3, 2)
        self.assertEqual(p.taylor_shift(shift), p.compose(X + shift))

    def test_pochhammer(self):
        self.assertEqual(RationalPoly.pochhammer(X, 0), RationalPoly.constant(1))
        self.assertEqual(RationalPoly.pochhammer(X, 3), X * (X + 1) * (X + 2))

    def test_format(self):
        self.assertEqual(RationalPoly((2, 5, 4)).format(), '4*x^2 + 5*x + 2')
        self.assertEqual(RationalPoly((0, Fraction(1, 2))).format(), '(1/2)*x')
        self.assertEqual(RationalPoly((-3, 0, 1)).format('alpha'), 'alpha^2 - 3')
        self.assertEqual(RationalPoly().format(), '0')

    def test_binomial_outside_range_is_zero(self):
        self.assertEqual(binomial(4, 2), 6)
        self.assertEqual(binomial(3, 5), 0)
        self.assertEqual(binomial(3, -1), 0)


class SymbolicMomentTests(SimpleTestCase):
    def test_gamma_plus_one_factor_round_trip(self):
        moment = SymbolicMoment.gamma_plus_one(2 * ALPHA + 1)
        self.assertTrue(moment.is_gamma_plus_one_multiple())
        self.assertEqual(moment.gamma_plus_one_factor(), 2 * ALPHA + 1)

    def test_transcendental_part_blocks_factor(self):
        moment = SymbolicMoment(RationalPoly.constant(1), RationalPoly.constant(-2))
        self.assertFalse(moment.is_gamma_plus_one_multiple())
        with self.assertRaises(ArithmeticError):
            moment.gamma_plus_one_factor()

    def test_linear_combinations(self):
        g = SymbolicMoment(RationalPoly.constant(1))
        t = SymbolicMoment(b_poly=RationalPoly.constant(1))
        combined = g * ALPHA + t * 2 - g
        self.assertEqual(combined, SymbolicMoment(ALPHA - 1, RationalPoly.constant(2)))

    def test_evaluation(self):
        moment = SymbolicMoment(ALPHA + 1, RationalPoly.constant(-2))
        self.assertEqual(moment.at(Fraction(1, 2)), (Fraction(3, 2), Fraction(-2)))
        self.assertAlmostEqual(moment.evaluate(0.5, 2.0, 0.25), 2.5)

    def test_string_form(self):
        moment = SymbolicMoment(RationalPoly.constant(1), RationalPoly.constant(-2))
        self.assertEqual(str(moment), '(1)*G + (-2)*T')
