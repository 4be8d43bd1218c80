"""
Adjusted moments  mu~_k = int_0^inf (x + alpha)^k W(x) dx  and canonical
moments  mu_k = int_0^inf x^k W(x) dx  for the X1-Laguerre weight
W(x) = x^alpha e^-x / (x + alpha)^2.

Symbolic results live in the Q[alpha]-module spanned by G = Gamma(alpha)
and T = mu~_1 (see ``core.algebra.SymbolicMoment``); numeric results are
``MomentTable`` values at a fixed alpha.
"""
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import ALPHA, RationalPoly, SymbolicMoment, binomial
from .conf import default_precision_config
from .exceptions import DomainError, InsufficientMomentsError
from .specfun import gamma, scaled_exp_integral, upper_incomplete_gamma

logger = logging.getLogger(__name__)

ADJUSTED = 'adjusted'
CANONICAL = 'canonical'
KINDS = (ADJUSTED, CANONICAL)

RECURSION = 'recursion'
CLOSED_FORM = 'closed_form'
MATRIX_PRODUCT = 'matrix_product'
GENERATING_FUNCTION = 'generating_function'
QUADRATURE = 'quadrature'
INVERSION = 'inversion'
ROUTES = (RECURSION, CLOSED_FORM, MATRIX_PRODUCT, GENERATING_FUNCTION, QUADRATURE, INVERSION)

ADJUSTED_ROUTES = (RECURSION, CLOSED_FORM, MATRIX_PRODUCT, GENERATING_FUNCTION, QUADRATURE)
CANONICAL_ROUTES = (INVERSION, RECURSION, QUADRATURE)


@dataclass(frozen=True)
class MomentTable:
    alpha: float
    kind: str
    values: tuple
    route: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f'unknown moment kind {self.kind!r}')
        if len(self.values) != len(self.route):
            raise ValueError('every moment needs exactly one route tag')
        unknown = set(self.route) - set(ROUTES)
        if unknown:
            raise ValueError(f'unknown route tags {sorted(unknown)}')
        bad = [k for k, value in enumerate(self.values) if not math.isfinite(value)]
        if bad:
            raise DomainError(f'non-finite {self.kind} moments at indices {bad}')

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return self.values[index]

    @property
    def k_max(self):
        return len(self.values) - 1

    def require(self, index):
        if index >= len(self.values):
            raise InsufficientMomentsError(index, len(self.values))

    def as_array(self):
        return np.asarray(self.values, dtype=float)


def _check_alpha(alpha):
    if not math.isfinite(alpha) or alpha <= 0:
        raise DomainError(f'alpha must be positive, got {alpha}')


def _check_k_max(k_max):
    if k_max < 0:
        raise DomainError(f'k_max must be non-negative, got {k_max}')


def max_relative_discrepancy(first, second):
    a = np.asarray(first, dtype=float)
    b = np.asarray(second, dtype=float)
    scale = np.maximum(np.abs(a), np.abs(b))
    scale[scale == 0] = 1.0
    return float(np.max(np.abs(a - b) / scale)) if a.size else 0.0


# =========================
# Seeds
# =========================

def adjusted_seed_moments(alpha, config=None):
    """(mu~_0, mu~_1) from the incomplete-gamma closed forms."""
    _check_alpha(alpha)
    config = config or default_precision_config()
    mu1 = float(scaled_exp_integral(1.0 + alpha, alpha, config) * gamma(1.0 + alpha, config))
    mu0 = float(gamma(alpha, config)) - 2.0 * mu1
    return mu0, mu1


def seed_mu1_forms(alpha, config=None):
    """The three expressions for mu~_1 produced by the seed derivation."""
    _check_alpha(alpha)
    config = config or default_precision_config()
    return {
        'exp_integral': float(scaled_exp_integral(1.0 + alpha, alpha, config)
                              * gamma(1.0 + alpha, config)),
        'reduced_order': float(gamma(alpha, config)
                               * (1.0 - alpha * scaled_exp_integral(alpha, alpha, config))),
        'incomplete_gamma': float(math.exp(alpha) * alpha ** alpha * gamma(1.0 + alpha, config)
                                  * upper_incomplete_gamma(-alpha, alpha, config)),
    }


def canonical_seed_moments(alpha, config=None):
    """(mu_0, mu_1) = (Gamma(a) - 2T, -Gamma(a+1) + (2a+1) T) with T = mu~_1."""
    mu0, t_value = adjusted_seed_moments(alpha, config)
    return mu0, t_value - alpha * mu0


# =========================
# Symbolic routes
# =========================

# mu~_0 = G - 2T, mu~_1 = T
SYMBOLIC_SEEDS = (
    SymbolicMoment(RationalPoly.constant(1), RationalPoly.constant(-2)),
    SymbolicMoment(RationalPoly(), RationalPoly.constant(1)),
)


def _recursion_coefficients(k):
    """(2 alpha + k, alpha (1 - k)) as polynomials in alpha."""
    return 2 * ALPHA + k, ALPHA * (1 - k)


@functools.lru_cache(maxsize=32)
def symbolic_adjusted_recursion(k_max):
    """mu~_0 .. mu~_k_max as exact SymbolicMoment values."""
    _check_k_max(k_max)
    moments = list(SYMBOLIC_SEEDS)
    for k in range(k_max - 1):
        lead, trail = _recursion_coefficients(k)
        moments.append(moments[k + 1] * lead + moments[k] * trail)
    return tuple(moments[:k_max + 1])


def adjusted_closed_form(k, form='leibniz'):
    """mu~_k for k >= 2 without recursion.

    ``form='leibniz'`` expands Gamma(a+1) sum_m (-1)^(j-m) C(j,m) a^m (-a-j+m)_(j-m)
    with j = k - 2; ``form='hypergeometric'`` builds the same sum from the
    terminating 1F1(-j; -a-j; a) scaled by (-a-j)_j.
    """
    if k < 2:
        raise DomainError(f'the closed form covers indices >= 2, got {k}')
    j = k - 2
    if form == 'leibniz':
        total = RationalPoly()
        for m in range(j + 1):
            pochhammer = RationalPoly.pochhammer(-ALPHA - j + m, j - m)
            total = total + (-1) ** (j - m) * binomial(j, m) * ALPHA ** m * pochhammer
    elif form == 'hypergeometric':
        full = RationalPoly.pochhammer(-ALPHA - j, j)
        total = RationalPoly()
        for m in range(j + 1):
            # (-j)_m / m! * alpha^m, then (-a-j)_j / (-a-j)_m divides exactly
            weight = Fraction(math.prod(range(-j, -j + m)), math.factorial(m))
            ratio = full.exact_div(RationalPoly.pochhammer(-ALPHA - j, m))
            total = total + weight * ALPHA ** m * ratio
        total = (-1) ** j * total
    else:
        raise ValueError(f'unknown closed-form variant {form!r}')
    return SymbolicMoment.gamma_plus_one(total)


def _transfer_matrix(n):
    return ((2 * ALPHA + n, ALPHA * (1 - n)), (RationalPoly.constant(1), RationalPoly()))


def _matmul2(left, right):
    return tuple(
        tuple(left[i][0] * right[0][j] + left[i][1] * right[1][j] for j in range(2))
        for i in range(2)
    )


def adjusted_matrix_product(k):
    """(mu~_(k+2), mu~_(k+1)) = Gamma(a+1) (B_k ... B_2) [2a+1, 1]^T for k >= 2."""
    if k < 2:
        raise DomainError(f'the matrix product starts at k = 2, got {k}')
    product = _transfer_matrix(2)
    for n in range(3, k + 1):
        product = _matmul2(_transfer_matrix(n), product)
    start = (2 * ALPHA + 1, RationalPoly.constant(1))
    upper = product[0][0] * start[0] + product[0][1] * start[1]
    lower = product[1][0] * start[0] + product[1][1] * start[1]
    return SymbolicMoment.gamma_plus_one(upper), SymbolicMoment.gamma_plus_one(lower)


def adjusted_moment_by_product(index):
    """mu~_index for index >= 2 via the transfer-matrix product."""
    if index < 2:
        raise DomainError(f'the matrix product route covers indices >= 2, got {index}')
    if index == 2:
        return SymbolicMoment.gamma_plus_one(1)
    if index == 3:
        return SymbolicMoment.gamma_plus_one(2 * ALPHA + 1)
    return adjusted_matrix_product(index - 2)[0]


def exact_adjusted_values(alpha, k_max, t_value=0):
    """Adjusted moments at a rational alpha, exactly, in units of Gamma(alpha).

    The transcendental mu~_1 is pinned to ``t_value``; the determinant
    representations do not depend on that choice.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError(f'alpha must be positive, got {alpha}')
    t_value = Fraction(t_value)
    values = []
    for moment in symbolic_adjusted_recursion(k_max):
        g_part, t_part = moment.at(alpha)
        values.append(g_part + t_part * t_value)
    return tuple(values)


def exact_canonical_values(alpha, k_max, t_value=0):
    alpha = Fraction(alpha)
    adjusted = exact_adjusted_values(alpha, k_max, t_value)
    return tuple(
        sum(binomial(k, m) * (-alpha) ** (k - m) * adjusted[m] for m in range(k + 1))
        for k in range(k_max + 1)
    )


# =========================
# Numeric adjusted routes
# =========================

def adjusted_recursion(k_max, alpha, seed=None, anchor='gamma', config=None):
    """Adjusted moments 0..k_max by the three-term moment recursion.

    ``anchor='gamma'`` restarts at mu~_2 = Gamma(a+1), mu~_3 = (2a+1) Gamma(a+1);
    ``anchor='seeds'`` propagates everything from (mu~_0, mu~_1).
    """
    _check_alpha(alpha)
    _check_k_max(k_max)
    config = config or default_precision_config()
    mu0, mu1 = seed if seed is not None else adjusted_seed_moments(alpha, config)
    values = [float(mu0), float(mu1)]
    start = 0
    if anchor == 'gamma':
        g1 = float(gamma(alpha + 1.0, config))
        values += [g1, (2.0 * alpha + 1.0) * g1]
        start = 2
    elif anchor != 'seeds':
        raise ValueError(f'unknown recursion anchor {anchor!r}')
    for k in range(start, k_max - 1):
        values.append((2.0 * alpha + k) * values[k + 1] + alpha * (1.0 - k) * values[k])
    values = values[:k_max + 1]
    routes = [CLOSED_FORM] * (start + 2) + [RECURSION] * (len(values) - start - 2)
    return MomentTable(alpha, ADJUSTED, tuple(values), tuple(routes[:len(values)]))


def adjusted_matrix_product_value(k, alpha, config=None):
    """Numeric (mu~_(k+2), mu~_(k+1)) from 2x2 float transfer matrices."""
    _check_alpha(alpha)
    if k < 2:
        raise DomainError(f'the matrix product starts at k = 2, got {k}')
    config = config or default_precision_config()
    product = np.eye(2)
    for n in range(2, k + 1):
        product = np.array([[2.0 * alpha + n, alpha * (1.0 - n)], [1.0, 0.0]]) @ product
    vector = float(gamma(alpha + 1.0, config)) * (product @ np.array([2.0 * alpha + 1.0, 1.0]))
    return float(vector[0]), float(vector[1])


def generating_function(t, alpha, config=None):
    """G(t) = Gamma(a+1) e^(a t) (1 - t)^-(a+1), the exponential generating
    function of mu~_(k+2)."""
    _check_alpha(alpha)
    if abs(t) >= 1:
        raise DomainError(f'the generating function needs |t| < 1, got {t}')
    config = config or default_precision_config()
    return float(gamma(alpha + 1.0, config)) * _generating_shape(t, alpha)


def _generating_shape(t, alpha):
    return np.exp(alpha * t) * (1.0 - t) ** (-(alpha + 1.0))


_COMPLEX_STEP = 1e-20


def generating_function_derivative(t, alpha, config=None):
    """G'(t) by a complex step through the closed form."""
    _check_alpha(alpha)
    if abs(t) >= 1:
        raise DomainError(f'the generating function needs |t| < 1, got {t}')
    config = config or default_precision_config()
    shape = _generating_shape(complex(t, _COMPLEX_STEP), alpha)
    return float(gamma(alpha + 1.0, config)) * float(np.imag(shape)) / _COMPLEX_STEP


def generating_ode_residual(t, alpha, config=None):
    """(1 - t) G'(t) + (a t - 2a - 1) G(t); zero for the true generating function."""
    value = generating_function(t, alpha, config)
    derivative = generating_function_derivative(t, alpha, config)
    return (1.0 - t) * derivative + (alpha * t - 2.0 * alpha - 1.0) * value


_CAUCHY_RADIUS = 0.5
_CAUCHY_POINTS = 64


def taylor_coefficient(k, alpha, method='series', config=None):
    """nu_k, the k-th Taylor coefficient of G; k! nu_k = mu~_(k+2)."""
    _check_alpha(alpha)
    if k < 0:
        raise DomainError(f'Taylor index must be non-negative, got {k}')
    config = config or default_precision_config()
    scale = float(gamma(alpha + 1.0, config))
    if method == 'series':
        # Cauchy product of e^(a t) and (1 - t)^-(a+1)
        exponential = np.ones(k + 1)
        binomial_series = np.ones(k + 1)
        for j in range(1, k + 1):
            exponential[j] = exponential[j - 1] * alpha / j
            binomial_series[j] = binomial_series[j - 1] * (alpha + j) / j
        return scale * float(np.dot(exponential, binomial_series[::-1]))
    if method == 'cauchy':
        if k >= _CAUCHY_POINTS // 2:
            raise DomainError(f'contour extraction supports k < {_CAUCHY_POINTS // 2}')
        nodes = _CAUCHY_RADIUS * np.exp(2j * np.pi * np.arange(_CAUCHY_POINTS) / _CAUCHY_POINTS)
        coefficients = np.fft.fft(_generating_shape(nodes, alpha)) / _CAUCHY_POINTS
        return scale * float(coefficients[k].real) / _CAUCHY_RADIUS ** k
    raise ValueError(f'unknown Taylor extraction method {method!r}')


def adjusted_moment_table(alpha, k_max, route=RECURSION, config=None):
    _check_alpha(alpha)
    _check_k_max(k_max)
    config = config or default_precision_config()
    if route == RECURSION:
        return adjusted_recursion(k_max, alpha, config=config)
    if route == QUADRATURE:
        from .oracle import adjusted_moment_integral

        values = tuple(adjusted_moment_integral(k, alpha, config).value for k in range(k_max + 1))
        return MomentTable(alpha, ADJUSTED, values, (QUADRATURE,) * len(values))

    seeds = adjusted_seed_moments(alpha, config)
    g1 = float(gamma(alpha + 1.0, config))
    values = list(seeds[:k_max + 1])
    for index in range(2, k_max + 1):
        if route == CLOSED_FORM:
            factor = adjusted_closed_form(index).gamma_plus_one_factor()
            values.append(g1 * factor.evaluate_float(alpha))
        elif route == MATRIX_PRODUCT:
            if index == 2:
                values.append(g1)
            elif index == 3:
                values.append((2.0 * alpha + 1.0) * g1)
            else:
                values.append(adjusted_matrix_product_value(index - 2, alpha, config)[0])
        elif route == GENERATING_FUNCTION:
            values.append(math.factorial(index - 2) * taylor_coefficient(index - 2, alpha, config=config))
        else:
            raise ValueError(f'route {route!r} does not produce adjusted moments')
    routes = [CLOSED_FORM] * min(2, len(values)) + [route] * (len(values) - 2)
    return MomentTable(alpha, ADJUSTED, tuple(values), tuple(routes))


# =========================
# Canonical moments
# =========================

def canonical_from_adjusted(table, k_max=None):
    """mu_k = sum_m C(k, m) (-alpha)^(k-m) mu~_m."""
    if table.kind != ADJUSTED:
        raise ValueError('expected an adjusted moment table')
    k_max = table.k_max if k_max is None else k_max
    table.require(k_max)
    alpha = table.alpha
    values = tuple(
        math.fsum(binomial(k, m) * (-alpha) ** (k - m) * table[m] for m in range(k + 1))
        for k in range(k_max + 1)
    )
    return MomentTable(alpha, CANONICAL, values, (INVERSION,) * len(values))


def adjusted_from_canonical(table, k_max=None):
    """mu~_k = sum_m C(k, m) alpha^(k-m) mu_m."""
    if table.kind != CANONICAL:
        raise ValueError('expected a canonical moment table')
    k_max = table.k_max if k_max is None else k_max
    table.require(k_max)
    alpha = table.alpha
    values = tuple(
        math.fsum(binomial(k, m) * alpha ** (k - m) * table[m] for m in range(k + 1))
        for k in range(k_max + 1)
    )
    return MomentTable(alpha, ADJUSTED, values, (INVERSION,) * len(values))


def canonical_recursion(k_max, alpha, seeds=None, config=None):
    """mu_(k+2) = sum_m [(2a+k) C(k+1,m) - a C(k+2,m) + (1-k) C(k,m)] a^(k+1-m) mu_m
    + (1 - a) k mu_(k+1)."""
    _check_alpha(alpha)
    _check_k_max(k_max)
    mu0, mu1 = seeds if seeds is not None else canonical_seed_moments(alpha, config)
    values = [float(mu0), float(mu1)]
    for k in range(k_max - 1):
        total = math.fsum(
            ((2.0 * alpha + k) * binomial(k + 1, m) - alpha * binomial(k + 2, m)
             + (1 - k) * binomial(k, m)) * alpha ** (k + 1 - m) * values[m]
            for m in range(k + 1)
        )
        values.append(total + (1.0 - alpha) * k * values[k + 1])
    values = values[:k_max + 1]
    routes = [CLOSED_FORM] * min(2, len(values)) + [RECURSION] * (len(values) - 2)
    return MomentTable(alpha, CANONICAL, tuple(values), tuple(routes))


def canonical_moment_table(alpha, k_max, route=INVERSION, config=None):
    _check_alpha(alpha)
    _check_k_max(k_max)
    config = config or default_precision_config()
    if route == INVERSION:
        return canonical_from_adjusted(adjusted_recursion(k_max, alpha, config=config))
    if route == RECURSION:
        return canonical_recursion(k_max, alpha, config=config)
    if route == QUADRATURE:
        from .oracle import canonical_moment_integral

        values = tuple(canonical_moment_integral(k, alpha, config).value for k in range(k_max + 1))
        return MomentTable(alpha, CANONICAL, values, (QUADRATURE,) * len(values))
    raise ValueError(f'route {route!r} does not produce canonical moments')


def canonical_recursion_report(k_max, alpha, config=None):
    """Compare the canonical recursion with binomial inversion."""
    inverted = canonical_moment_table(alpha, k_max, INVERSION, config)
    recursed = canonical_moment_table(alpha, k_max, RECURSION, config)
    per_index = [
        max_relative_discrepancy([a], [b]) for a, b in zip(inverted.values, recursed.values)
    ]
    report = {
        'alpha': alpha,
        'k_max': k_max,
        'max_relative_discrepancy': max(per_index),
        'per_index': per_index,
    }
    if report['max_relative_discrepancy'] > 1e-10:
        logger.warning('canonical recursion deviates from inversion at alpha=%s: %.3e',
                       alpha, report['max_relative_discrepancy'])
    return report
