"""
Exact univariate polynomials over the rationals and the two-symbol moment
module built on top of them.

``RationalPoly`` is used both for polynomials in x (the X1 polynomials in
exact mode) and for polynomials in alpha (coefficients of the adjusted
moments).  Coefficients are stored dense, lowest degree first, with no
trailing zeros.
"""
from fractions import Fraction
from math import comb

import numpy as np

_SCALARS = (int, Fraction)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str, float)):
        return Fraction(value)
    return Fraction(value)


def _format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


class RationalPoly:
    __slots__ = ('coef',)

    def __init__(self, coefficients=()):
        coef = [_as_fraction(c) for c in coefficients]
        while coef and coef[-1] == 0:
            coef.pop()
        self.coef = tuple(coef)

    # --- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def identity(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree, value=1):
        return cls((0,) * degree + (value,))

    @classmethod
    def pochhammer(cls, base, n):
        """Rising factorial (base)_n with ``base`` a RationalPoly."""
        result = cls.constant(1)
        for i in range(n):
            result = result * (base + i)
        return result

    # --- basic properties ---------------------------------------------

    @property
    def degree(self):
        return len(self.coef) - 1

    @property
    def leading(self):
        return self.coef[-1] if self.coef else Fraction(0)

    def is_zero(self):
        return not self.coef

    def coefficient(self, k):
        return self.coef[k] if 0 <= k < len(self.coef) else Fraction(0)

    # --- arithmetic ---------------------------------------------------

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, _SCALARS):
            return cls.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coef), len(other.coef))
        return RationalPoly(self.coefficient(k) + other.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coef)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return RationalPoly(c * other for c in self.coef)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coef) + len(other.coef) - 1)
        for i, a in enumerate(self.coef):
            if a == 0:
                continue
            for j, b in enumerate(other.coef):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError('polynomial division by zero scalar')
        return RationalPoly(c / other for c in self.coef)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('only non-negative integer powers are supported')
        result = RationalPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError('polynomial division by zero')
        remainder = list(self.coef)
        quotient = [Fraction(0)] * max(len(remainder) - other.degree, 0)
        lead = other.leading
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + other.degree] / lead
            quotient[shift] = factor
            if factor:
                for j, c in enumerate(other.coef):
                    remainder[shift + j] -= factor * c
        return RationalPoly(quotient), RationalPoly(remainder[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise ArithmeticError(f'{other} does not divide {self}')
        return quotient

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coef == other.coef

    def __hash__(self):
        return hash(self.coef)

    # --- calculus and evaluation ----------------------------------------

    def deriv(self, m=1):
        coef = list(self.coef)
        for _ in range(m):
            coef = [k * c for k, c in enumerate(coef)][1:]
        return RationalPoly(coef)

    def __call__(self, value):
        """Horner evaluation; a RationalPoly argument gives the composition."""
        result = 0
        for c in reversed(self.coef):
            result = result * value + c
        return result

    def compose(self, inner):
        return self(inner) if self.coef else RationalPoly()

    def evaluate_float(self, value):
        result = 0.0
        for c in reversed(self.coef):
            result = result * value + float(c)
        return result

    def taylor_shift(self, shift):
        """Coefficients of p(x + shift), by repeated synthetic division."""
        coef = list(self.coef)
        size = len(coef)
        for i in range(size):
            for j in range(size - 2, i - 1, -1):
                coef[j] += shift * coef[j + 1]
        return RationalPoly(coef)

    def to_numpy(self):
        return np.array([float(c) for c in self.coef] or [0.0])

    # --- formatting ---------------------------------------------------

    def format(self, var='x'):
        if not self.coef:
            return '0'
        terms = []
        for k in range(len(self.coef) - 1, -1, -1):
            c = self.coef[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if k == 0:
                body = _format_rational(magnitude)
            else:
                power = var if k == 1 else f'{var}^{k}'
                if magnitude == 1:
                    body = power
                elif magnitude.denominator == 1:
                    body = f'{magnitude.numerator}*{power}'
                else:
                    body = f'({_format_rational(magnitude)})*{power}'
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in terms[1:]:
            text += f' {sign} {body}'
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f'RationalPoly({[_format_rational(c) for c in self.coef]})'


ALPHA = RationalPoly.identity()


def binomial(n, k):
    return comb(n, k) if 0 <= k <= n else 0


# =========================
# Two-symbol moment module
# =========================

class SymbolicMoment:
    """Exact element a(alpha)*G + b(alpha)*T.

    G stands for Gamma(alpha) and T for the first adjusted moment; both are
    treated as formal symbols, the coefficients are polynomials in alpha.
    """

    __slots__ = ('a_poly', 'b_poly')

    def __init__(self, a_poly=None, b_poly=None):
        self.a_poly = a_poly if a_poly is not None else RationalPoly()
        self.b_poly = b_poly if b_poly is not None else RationalPoly()

    @classmethod
    def gamma_plus_one(cls, factor=1):
        """factor * Gamma(alpha + 1) == (alpha * factor) * G."""
        factor = RationalPoly._coerce(factor)
        return cls(ALPHA * factor)

    def __add__(self, other):
        if not isinstance(other, SymbolicMoment):
            return NotImplemented
        return SymbolicMoment(self.a_poly + other.a_poly, self.b_poly + other.b_poly)

    def __sub__(self, other):
        if not isinstance(other, SymbolicMoment):
            return NotImplemented
        return SymbolicMoment(self.a_poly - other.a_poly, self.b_poly - other.b_poly)

    def __neg__(self):
        return SymbolicMoment(-self.a_poly, -self.b_poly)

    def __mul__(self, factor):
        if isinstance(factor, (RationalPoly,) + _SCALARS):
            return SymbolicMoment(self.a_poly * factor, self.b_poly * factor)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymbolicMoment):
            return NotImplemented
        return self.a_poly == other.a_poly and self.b_poly == other.b_poly

    def __hash__(self):
        return hash((self.a_poly, self.b_poly))

    def is_gamma_plus_one_multiple(self):
        return self.b_poly.is_zero() and (self.a_poly % ALPHA).is_zero()

    def gamma_plus_one_factor(self):
        """p(alpha) such that the moment equals p(alpha) * Gamma(alpha + 1)."""
        if not self.is_gamma_plus_one_multiple():
            raise ArithmeticError(f'{self} is not a Q[alpha] multiple of Gamma(alpha+1)')
        return self.a_poly.exact_div(ALPHA)

    def at(self, alpha):
        """Exact coefficients (g, t) of G and T at a rational alpha."""
        alpha = _as_fraction(alpha)
        return self.a_poly(alpha) + Fraction(0), self.b_poly(alpha) + Fraction(0)

    def evaluate(self, alpha, gamma_value, t_value):
        return (self.a_poly.evaluate_float(alpha) * gamma_value
                + self.b_poly.evaluate_float(alpha) * t_value)

    def __str__(self):
        return f'({self.a_poly.format("alpha")})*G + ({self.b_poly.format("alpha")})*T'

    __repr__ = __str__
