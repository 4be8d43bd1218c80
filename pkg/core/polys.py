"""
X1-Laguerre polynomials L_n (n >= 1) and the checks that pin them down.

Polynomials come in two flavours that share one duck-typed interface
(``deriv``, ``divmod``, call, arithmetic):

* exact mode: ``core.algebra.RationalPoly`` at a rational alpha, with moments
  in units of Gamma(alpha);
* float mode: ``numpy.polynomial.Polynomial``.

Coefficient sequences are always lowest degree first.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial

from . import linalg
from .algebra import RationalPoly, binomial
from .conf import default_precision_config
from .exceptions import DomainError, InsufficientMomentsError, NonzeroRemainderError, SingularMatrixError
from .moments import (
    adjusted_recursion,
    canonical_from_adjusted,
    exact_adjusted_values,
    exact_canonical_values,
)
from .specfun import gamma

logger = logging.getLogger(__name__)

LITERATURE = 'literature'
RAW = 'raw'
NORMALIZATIONS = (LITERATURE, RAW)

PATH_A = 'a'
PATH_TILDE = 'tilde'
PATH_CLASSICAL = 'classical'
PATHS = (PATH_A, PATH_TILDE, PATH_CLASSICAL)

FLAVOR_A = 'A'
FLAVOR_A_TILDE = 'A_tilde'

SOLVE_METHODS = ('lu', 'bareiss', 'cramer')

CORRECTED = 'corrected'
LITERAL = 'literal'

NO_DEGREE_ZERO = 'there is no degree-0 member of the X1-Laguerre family'


# =========================
# Helpers
# =========================

def _is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def exact_alpha(value):
    """Parse alpha as a rational: 2, '1/2', '0.5' or a float with a short decimal form."""
    if isinstance(value, float):
        value = repr(value)
    try:
        alpha = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f'alpha must be rational in exact mode, got {value!r}') from exc
    if alpha <= 0:
        raise DomainError(f'alpha must be positive, got {alpha}')
    return alpha


def _check_degree(n):
    if n == 0:
        raise DomainError(NO_DEGREE_ZERO)
    if n < 1:
        raise DomainError(f'degree must be at least 1, got {n}')


def _linear(shift, exact):
    """x + shift."""
    return RationalPoly((shift, 1)) if exact else Polynomial([float(shift), 1.0])


def _coefficients(poly):
    if isinstance(poly, RationalPoly):
        return poly.coef
    return tuple(float(c) for c in poly.coef)


def _pad(coefficients, size, exact):
    zero = Fraction(0) if exact else 0.0
    coefficients = list(coefficients)[:size]
    return tuple(coefficients + [zero] * (size - len(coefficients)))


def _as_poly(p):
    if isinstance(p, X1Polynomial):
        return p.poly
    if isinstance(p, (RationalPoly, Polynomial)):
        return p
    values = list(p)
    if all(_is_exact(c) for c in values):
        return RationalPoly(values)
    return Polynomial(np.asarray(values, dtype=float))


def max_abs_coefficient(p):
    coefficients = _coefficients(_as_poly(p))
    return max((abs(c) for c in coefficients), default=0)


def _taylor_shift(coefficients, shift):
    """Coefficients of p(x + shift) by repeated synthetic division."""
    coefficients = [float(c) for c in coefficients]
    size = len(coefficients)
    for i in range(size):
        for j in range(size - 2, i - 1, -1):
            coefficients[j] += shift * coefficients[j + 1]
    return tuple(coefficients)


def to_shifted(coeffs, alpha):
    """Monomial coefficients c_k -> a_k with p = sum a_k (x + alpha)^k."""
    if _is_exact(alpha) and all(_is_exact(c) for c in coeffs):
        return _pad(RationalPoly(coeffs).taylor_shift(-Fraction(alpha)).coef, len(coeffs), True)
    return _taylor_shift(coeffs, -float(alpha))


def to_monomial(coeffs, alpha):
    """Shifted coefficients a_k -> monomial coefficients c_k."""
    if _is_exact(alpha) and all(_is_exact(c) for c in coeffs):
        return _pad(RationalPoly(coeffs).taylor_shift(Fraction(alpha)).coef, len(coeffs), True)
    return _taylor_shift(coeffs, float(alpha))


def _format_number(value, digits):
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f'{value.numerator}/{value.denominator}'
    return format(value, f'.{digits}g')


def _format_terms(coefficients, digits=17):
    terms = []
    for k in range(len(coefficients) - 1, -1, -1):
        c = coefficients[k]
        if c == 0:
            continue
        magnitude = abs(c)
        if k == 0:
            body = _format_number(magnitude, digits)
        else:
            power = 'x' if k == 1 else f'x^{k}'
            body = power if magnitude == 1 else f'{_format_number(magnitude, digits)}{power}'
        terms.append(('-' if c < 0 else '+', body))
    if not terms:
        return '0'
    text = ('-' if terms[0][0] == '-' else '') + terms[0][1]
    for sign, body in terms[1:]:
        text += f' {sign} {body}'
    return text


# =========================
# Domain types
# =========================

@dataclass(frozen=True)
class X1Polynomial:
    n: int
    alpha: object
    coeffs_x: tuple
    normalization: str = LITERATURE
    K: object = None
    path: str = PATH_TILDE
    exact: bool = False
    condition: float = None

    def __post_init__(self):
        _check_degree(self.n)
        if len(self.coeffs_x) != self.n + 1 or self.coeffs_x[-1] == 0:
            raise ValueError(f'expected {self.n + 1} coefficients with a nonzero leading term')
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f'unknown normalization {self.normalization!r}')

    @property
    def coeffs_shifted(self):
        return to_shifted(self.coeffs_x, self.alpha)

    @property
    def poly(self):
        if self.exact:
            return RationalPoly(self.coeffs_x)
        return Polynomial(np.asarray(self.coeffs_x, dtype=float))

    @property
    def leading(self):
        return self.coeffs_x[-1]

    @property
    def sign_vs_listed(self):
        """+1 when the sign matches the classical listing (L_1 = x+alpha+1, leading
        sign (-1)^n from n = 2 on), -1 otherwise."""
        listed = 1 if self.n == 1 else (-1) ** self.n
        return 1 if (self.leading > 0) == (listed > 0) else -1

    def coefficients(self, basis='x'):
        if basis == 'x':
            return self.coeffs_x
        if basis == 'shifted':
            return self.coeffs_shifted
        raise ValueError(f'unknown basis {basis!r}')

    def scaled(self, factor):
        coefficients = tuple(c * factor for c in self.coeffs_x)
        K = None if self.K is None else self.K * factor
        return X1Polynomial(self.n, self.alpha, coefficients, RAW, K, self.path, self.exact, self.condition)

    def pretty(self, digits=17):
        if self.exact:
            denominator = math.lcm(*(Fraction(c).denominator for c in self.coeffs_x))
            body = _format_terms([Fraction(c) * denominator for c in self.coeffs_x])
            return body if denominator == 1 else f'(1/{denominator})*({body})'
        return _format_terms(self.coeffs_x, digits)

    def __str__(self):
        return self.pretty()


@dataclass(frozen=True)
class MomentMatrix:
    n: int
    flavor: str
    entries: tuple
    alpha: object = None
    exact: bool = False

    def as_array(self):
        return np.array([[float(v) for v in row] for row in self.entries])

    def rhs(self, K):
        zero = Fraction(0) if self.exact else 0.0
        return [zero] * self.n + [K]

    def determinant(self):
        if self.exact:
            return linalg.bareiss_determinant(self.entries)
        return float(np.linalg.det(self.as_array()))

    def condition(self):
        """Condition estimate after row equilibration."""
        return linalg.equilibrated_condition(self.as_array())


@dataclass(frozen=True)
class OperatorExpression:
    """l[y] = -x y'' + ((x - alpha)/(x + alpha)) [(x + alpha + 1) y' - y]."""

    alpha: object

    def coefficients(self, x):
        """(a2, a1, a0) at a point x != -alpha."""
        alpha = self.alpha
        return -x, x - alpha - 1 + 2 * x / (x + alpha), -(x - alpha) / (x + alpha)

    def apply(self, p):
        return apply_operator(p, self.alpha)

    @staticmethod
    def eigenvalue(n):
        return n - 1


# =========================
# Moment matrices and solving
# =========================

def _condition_row(size, alpha):
    """k (-alpha)^(k-1) - (-alpha)^k for k = 0 .. size-1."""
    return [(k * (-alpha) ** (k - 1) if k else 0) - (-alpha) ** k for k in range(size)]


def _require(moments, index):
    if hasattr(moments, 'require'):
        moments.require(index)
    elif index >= len(moments):
        raise InsufficientMomentsError(index, len(moments))


def build_matrix_a(n, canonical_moments, alpha):
    """Monomial-basis system: exceptional condition, then <L, v_1>, <L, (x+alpha)^s>."""
    _check_degree(n)
    _require(canonical_moments, 2 * n)
    exact = _is_exact(alpha) and all(_is_exact(canonical_moments[k]) for k in range(2 * n + 1))
    if not exact:
        alpha = float(alpha)
    mu = canonical_moments
    rows = [_condition_row(n + 1, alpha)]
    rows.append([mu[k + 1] + (alpha + 1) * mu[k] for k in range(n + 1)])
    for s in range(2, n + 1):
        rows.append([
            sum(binomial(s, m) * mu[m + k] * alpha ** (s - m) for m in range(s + 1))
            for k in range(n + 1)
        ])
    return MomentMatrix(n, FLAVOR_A, tuple(tuple(row) for row in rows), alpha, exact)


def build_matrix_a_tilde(n, adjusted_moments, alpha=None):
    """Shifted-basis system: a_1 - a_0 = 0, then <L, v_1>, <L, (x+alpha)^s>."""
    _check_degree(n)
    _require(adjusted_moments, 2 * n)
    alpha = getattr(adjusted_moments, 'alpha', alpha)
    mu = adjusted_moments
    exact = all(_is_exact(mu[k]) for k in range(2 * n + 1))
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    rows = [[-one, one] + [zero] * (n - 1)]
    rows.append([mu[k] + mu[k + 1] for k in range(n + 1)])
    for s in range(2, n + 1):
        rows.append([mu[k + s] for k in range(n + 1)])
    return MomentMatrix(n, FLAVOR_A_TILDE, tuple(tuple(row) for row in rows), alpha, exact)


def solve_polynomial(matrix, K, method=None, normalization=RAW, path=None):
    """Solve matrix . coeffs = (0, ..., 0, K) and return the polynomial."""
    if K == 0:
        raise DomainError('the normalization constant K must be nonzero')
    method = method or ('bareiss' if matrix.exact else 'lu')
    if method not in SOLVE_METHODS:
        raise ValueError(f'unknown solve method {method!r}')
    path = path or (PATH_A if matrix.flavor == FLAVOR_A else PATH_TILDE)
    rhs = matrix.rhs(Fraction(K) if matrix.exact else float(K))
    condition = None

    if matrix.exact:
        rows = [list(row) for row in matrix.entries]
        if method == 'cramer':
            solution = linalg.cramer_solve(rows, rhs)
        else:
            solution = linalg.bareiss_solve(rows, rhs)
    else:
        array = matrix.as_array()
        condition = matrix.condition()
        if linalg.is_numerically_singular(condition):
            raise SingularMatrixError(f'{matrix.flavor} matrix for n={matrix.n} is singular', condition)
        logger.debug('%s matrix n=%d alpha=%s: condition %.3e', matrix.flavor, matrix.n, matrix.alpha, condition)
        if method == 'cramer':
            solution = linalg.cramer_solve(array.tolist(), rhs, determinant=lambda rows: np.linalg.det(np.array(rows)))
        else:
            solution = linalg.lu_solve_refined(array, rhs)
        # measured on the equilibrated system, relative to its right-hand side
        scaled, scaled_rhs, _ = linalg.equilibrate(array, rhs)
        residual = np.linalg.norm(scaled @ np.asarray(solution, dtype=float) - scaled_rhs)
        if residual > condition * np.finfo(float).eps * np.linalg.norm(scaled_rhs) * 10:
            logger.warning('%s solve for n=%d leaves residual %.3e', matrix.flavor, matrix.n, residual)
        solution = [float(c) for c in solution]

    if matrix.flavor == FLAVOR_A_TILDE:
        solution = to_monomial(solution, matrix.alpha)
    return X1Polynomial(
        n=matrix.n,
        alpha=matrix.alpha,
        coeffs_x=tuple(solution),
        normalization=normalization,
        K=K,
        path=path,
        exact=matrix.exact,
        condition=condition,
    )


def literature_normalization(n, alpha, exact=False):
    """(-1)^n (alpha + n) Gamma(alpha + n - 1); in units of Gamma(alpha) when exact."""
    _check_degree(n)
    if exact:
        alpha = exact_alpha(alpha)
        # Gamma(alpha + n - 1) / Gamma(alpha) = (alpha)_(n-1)
        return (-1) ** n * (alpha + n) * math.prod((alpha + i for i in range(n - 1)), start=Fraction(1))
    return (-1) ** n * (alpha + n) * float(gamma(alpha + n - 1.0))


def norm_squared(n, alpha):
    """||L_n||^2 = Gamma(alpha + n - 1) (alpha + n) / (n - 1)!."""
    _check_degree(n)
    return float(gamma(alpha + n - 1.0)) * (alpha + n) / math.factorial(n - 1)


# =========================
# Classical representation
# =========================

def classical_laguerre(m, beta):
    """Classical Laguerre polynomial of parameter beta; m = -1 gives 0."""
    if m < -1:
        raise DomainError(f'classical degree must be at least -1, got {m}')
    exact = _is_exact(beta)
    if exact:
        beta = Fraction(beta)
    else:
        beta = float(beta)
    x = _linear(0, exact)
    previous = x * 0
    current = x * 0 + 1
    if m == -1:
        return previous
    for k in range(m):
        following = ((2 * k + 1 + beta) - x) * current - (k + beta) * previous
        previous, current = current, following / (k + 1)
    return current


def x1_from_classical(n, alpha):
    """-(x + alpha + 1) p_(n-1)^alpha + p_(n-2)^alpha, literature-normalized."""
    _check_degree(n)
    exact = _is_exact(alpha)
    alpha = Fraction(alpha) if exact else float(alpha)
    poly = -(_linear(alpha + 1, exact) * classical_laguerre(n - 1, alpha)) + classical_laguerre(n - 2, alpha)
    return X1Polynomial(
        n=n,
        alpha=alpha,
        coeffs_x=_pad(_coefficients(poly), n + 1, exact),
        normalization=LITERATURE,
        K=literature_normalization(n, alpha, exact),
        path=PATH_CLASSICAL,
        exact=exact,
    )


# =========================
# Oracles on polynomials
# =========================

def three_term_residual(L_n, L_n1, L_n2, n, alpha, reading=CORRECTED):
    """Residual of the recurrence linking L_n, L_(n+1), L_(n+2)."""
    polys = [_as_poly(p) for p in (L_n, L_n1, L_n2)]
    exact = all(isinstance(p, RationalPoly) for p in polys)
    alpha = Fraction(alpha) if exact else float(alpha)
    x = _linear(0, exact)
    square = _linear(alpha, exact) * _linear(alpha, exact)
    if reading == CORRECTED:
        middle = square * (x - 2 * n - alpha - 1) + 2 * alpha
    elif reading == LITERAL:
        middle = (x - 2 * n - alpha - 1) * ((n + alpha) ** 2) + 2 * alpha
    else:
        raise ValueError(f'unknown recurrence reading {reading!r}')
    top = (square * (n + alpha) - alpha) * (n + 1)
    bottom = (square * (n + alpha + 1) - alpha) * (n + alpha - 1)
    return top * polys[2] + middle * (n + alpha) * polys[1] + bottom * polys[0]


def apply_operator(p, alpha):
    """l[p] as a polynomial; (x + alpha) must divide (x + alpha + 1) p' - p."""
    poly = _as_poly(p)
    exact = isinstance(poly, RationalPoly)
    alpha = Fraction(alpha) if exact else float(alpha)
    shift = _linear(alpha, exact)
    bracket = (shift + 1) * poly.deriv() - poly
    quotient, remainder = divmod(bracket, shift)
    leftover = max((abs(c) for c in _coefficients(remainder)), default=0)
    if exact and leftover != 0:
        raise NonzeroRemainderError(leftover)
    if not exact and leftover > 1e-10 * max(max_abs_coefficient(poly), 1.0):
        raise NonzeroRemainderError(leftover)
    x = _linear(0, exact)
    return -(x * poly.deriv(2)) + (x - alpha) * quotient


def lemma_coefficient_sum(coeffs, alpha):
    """-c_0 + sum_k c_k [k (-alpha)^(k-1) - (-alpha)^k]."""
    coeffs = list(coeffs)
    return sum(c * r for c, r in zip(coeffs, _condition_row(len(coeffs), alpha)))


def exceptional_condition_residual(p, alpha):
    """p'(-alpha) - p(-alpha), cross-checked against the coefficient-sum form."""
    poly = _as_poly(p)
    exact = isinstance(poly, RationalPoly)
    alpha = Fraction(alpha) if exact else float(alpha)
    direct = poly.deriv()(-alpha) - poly(-alpha)
    lemma = lemma_coefficient_sum(_coefficients(poly), alpha)
    if exact:
        if direct != lemma:
            raise ArithmeticError(f'condition forms disagree: {direct} != {lemma}')
        return Fraction(direct)
    direct = float(direct)
    if abs(direct - lemma) > 1e-9 * max(1.0, max_abs_coefficient(poly) * (1.0 + alpha) ** len(_coefficients(poly))):
        logger.warning('condition forms disagree at alpha=%s: %.3e vs %.3e', alpha, direct, lemma)
    return direct


def exceptional_subspace_dimension(m, alpha):
    """Dimension of {p : deg p <= m, p'(-alpha) = p(-alpha)}."""
    if m < 0:
        raise DomainError(f'degree bound must be non-negative, got {m}')
    row = _condition_row(m + 1, alpha)
    if _is_exact(alpha):
        return m + 1 - linalg.rational_rank([row])
    return m + 1 - int(np.linalg.matrix_rank(np.array([row], dtype=float)))


def span_rank(polys):
    polys = [_as_poly(p) for p in polys]
    if not polys:
        return 0
    size = max(len(_coefficients(p)) for p in polys)
    if all(isinstance(p, RationalPoly) for p in polys):
        return linalg.rational_rank([_pad(p.coef, size, True) for p in polys])
    rows = np.array([_pad(_coefficients(p), size, False) for p in polys], dtype=float)
    return int(np.linalg.matrix_rank(rows))


# =========================
# Entry point
# =========================

def construct(n, alpha, path=PATH_TILDE, normalization=LITERATURE, K=None, exact=False, method=None, config=None):
    _check_degree(n)
    if path not in PATHS:
        raise ValueError(f'unknown construction path {path!r}')
    if normalization not in NORMALIZATIONS:
        raise ValueError(f'unknown normalization {normalization!r}')
    config = config or default_precision_config()
    if exact:
        alpha = exact_alpha(alpha)
    else:
        alpha = float(alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise DomainError(f'alpha must be positive, got {alpha}')
        if path != PATH_CLASSICAL and n > config.max_float_degree:
            raise DomainError(
                f'float determinant path is limited to n <= {config.max_float_degree}; use exact mode'
            )

    literature_K = literature_normalization(n, alpha, exact)
    if normalization == RAW:
        if K is None or K == 0:
            raise DomainError('raw normalization needs a nonzero K')
        K = Fraction(K) if exact else float(K)
    else:
        K = literature_K

    if path == PATH_CLASSICAL:
        polynomial = x1_from_classical(n, alpha)
        return polynomial if normalization == LITERATURE else polynomial.scaled(K / literature_K)

    if path == PATH_A:
        if exact:
            moments = exact_canonical_values(alpha, 2 * n)
        else:
            moments = canonical_from_adjusted(adjusted_recursion(2 * n, alpha, config=config))
        matrix = build_matrix_a(n, moments, alpha)
    else:
        if exact:
            moments = exact_adjusted_values(alpha, 2 * n)
        else:
            moments = adjusted_recursion(2 * n, alpha, config=config)
        matrix = build_matrix_a_tilde(n, moments, alpha=alpha)
    return solve_polynomial(matrix, K, method=method, normalization=normalization, path=path)
