"""
Scalar special functions behind the two transcendental seed moments.

Gamma uses a Lanczos approximation (g = 7, nine terms) on [1, 2) and
exact downward shifts above it.  The generalized
exponential integral E_a(x) = int_1^inf exp(-x t) t^(-a) dt is evaluated
with a modified Lentz continued fraction for x >= switch and with its
power series below; the upper incomplete gamma function is derived from
E_a through Gamma(s, x) = x^s E_(1-s)(x), so there is one tested code path.

With ``PrecisionConfig.extended_precision`` the public functions evaluate
through a private mpmath context and return ``mpmath.mpf`` values.
"""
import logging
import math

import numpy as np
from mpmath.ctx_mp import MPContext

from .conf import default_precision_config
from .exceptions import DomainError, NonConvergenceError, SpecialFunctionOverflow

logger = logging.getLogger(__name__)

_LANCZOS_G = 7
_LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Largest argument whose Gamma value is a finite double.
GAMMA_MAX_ARGUMENT = 171.6243769563027

_EPS = np.finfo(float).eps
_FPMIN = np.finfo(float).tiny / _EPS
_MAX_ITER = 10_000


def _check_argument(name, value, strictly_positive=True):
    if not math.isfinite(value):
        raise DomainError(f'{name} must be finite, got {value}')
    if strictly_positive and value <= 0:
        raise DomainError(f'{name} must be positive, got {value}')


def _extended_context(config):
    ctx = MPContext()
    ctx.dps = config.extended_dps
    return ctx


def _resolve(config):
    return config if config is not None else default_precision_config()


# =========================
# Gamma
# =========================

def _lanczos(z):
    """Gamma(z) for 0.5 <= z < 2."""
    z -= 1.0
    series = _LANCZOS_COEFFICIENTS[0]
    for i, coefficient in enumerate(_LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * series


def _gamma_upward(z):
    """Gamma(z) for z >= 0.5 as (z-1)(z-2)...(z-m) Gamma(z-m) with z-m in [1, 2).

    Every factor z-k is exact in binary floating point, so the only rounding
    comes from the multiplications and the short Lanczos evaluation.
    """
    if z > GAMMA_MAX_ARGUMENT:
        return math.inf
    if z < 2.0:
        return _lanczos(z)
    shifts = int(math.floor(z)) - 1
    value = _lanczos(z - shifts)
    for k in range(1, shifts + 1):
        value *= z - k
    return value


def _gamma_real(z):
    """Gamma on the whole real line except the poles 0, -1, -2, ..."""
    if z == math.floor(z):
        if z <= 0:
            raise DomainError(f'Gamma has a pole at {z}')
        if z <= 171:
            return float(math.factorial(int(z) - 1))
    if z < 0.5:
        return math.pi / (math.sin(math.pi * z) * _gamma_upward(1.0 - z))
    return _gamma_upward(z)


def gamma(x, config=None):
    _check_argument('x', x)
    config = _resolve(config)
    if config.extended_precision:
        return _extended_context(config).gamma(x)
    if x > GAMMA_MAX_ARGUMENT:
        raise SpecialFunctionOverflow(f'Gamma({x}) exceeds the double range')
    value = _gamma_real(x)
    if not math.isfinite(value):
        raise SpecialFunctionOverflow(f'Gamma({x}) exceeds the double range')
    return value


# =========================
# Exponential integral
# =========================

def _scaled_expint_continued_fraction(a, x):
    """exp(x) * E_a(x) by the modified Lentz algorithm."""
    b = x + a
    if abs(b) < _FPMIN:
        b = _FPMIN
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (a - 1.0 + i)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            logger.debug('E_%s(%s): continued fraction converged after %d terms', a, x, i)
            return h
    raise NonConvergenceError(f'continued fraction for E_{a}({x}) did not converge')


def _digamma_integer(n):
    return -np.euler_gamma + sum(1.0 / m for m in range(1, n))


def _expint_series(a, x):
    """E_a(x) for small x and a > 0 from the power series."""
    n = round(a)
    if abs(a - n) < 1e-12:
        # integer order: the k = n - 1 term turns into the log/digamma term
        leading = (-x) ** (n - 1) / math.factorial(n - 1) * (-math.log(x) + _digamma_integer(n))
        total = 0.0
        factorial_term = 1.0
        for k in range(_MAX_ITER):
            if k > 0:
                factorial_term *= -x / k
            if k == n - 1:
                continue
            term = factorial_term / (k - n + 1)
            total += term
            if k > n and abs(term) < _EPS * abs(total):
                return leading - total
    else:
        leading = _gamma_real(1.0 - a) * x ** (a - 1.0)
        total = 0.0
        factorial_term = 1.0
        for k in range(_MAX_ITER):
            if k > 0:
                factorial_term *= -x / k
            term = factorial_term / (1.0 - a + k)
            total += term
            if k > 0 and abs(term) < _EPS * abs(total):
                return leading - total
    raise NonConvergenceError(f'series for E_{a}({x}) did not converge')


def _scaled_expint_positive_order(a, x, switch):
    if x >= switch:
        return _scaled_expint_continued_fraction(a, x)
    return math.exp(x) * _expint_series(a, x)


def _scaled_expint(a, x, switch):
    if a > 0:
        return _scaled_expint_positive_order(a, x, switch)
    # Upward reduction: x E_a = exp(-x) - a E_(a+1); every term is positive
    # for a <= 0, so the chain is stable.
    orders = [a]
    while orders[-1] <= 0:
        orders.append(orders[-1] + 1.0)
    scaled = _scaled_expint_positive_order(orders[-1], x, switch)
    for order in reversed(orders[:-1]):
        scaled = (1.0 - order * scaled) / x
    return scaled


def scaled_exp_integral(a, x, config=None):
    """exp(x) * E_a(x), finite for large x where E_a itself underflows."""
    _check_argument('x', x)
    _check_argument('a', a, strictly_positive=False)
    config = _resolve(config)
    if config.extended_precision:
        ctx = _extended_context(config)
        return ctx.exp(x) * ctx.expint(a, x)
    return _scaled_expint(a, x, config.expint_switch)


def exp_integral(a, x, config=None):
    _check_argument('x', x)
    _check_argument('a', a, strictly_positive=False)
    config = _resolve(config)
    if config.extended_precision:
        return _extended_context(config).expint(a, x)
    return math.exp(-x) * _scaled_expint(a, x, config.expint_switch)


def upper_incomplete_gamma(a, x, config=None):
    """Gamma(a, x) = int_x^inf t^(a-1) exp(-t) dt, any real a."""
    _check_argument('x', x)
    _check_argument('a', a, strictly_positive=False)
    config = _resolve(config)
    if config.extended_precision:
        return _extended_context(config).gammainc(a, x)
    scaled = _scaled_expint(1.0 - a, x, config.expint_switch)
    log_prefactor = a * math.log(x) - x
    if log_prefactor > 709.0:
        raise SpecialFunctionOverflow(f'Gamma({a}, {x}) exceeds the double range')
    return math.exp(log_prefactor) * scaled


def weighted_beta_integral(alpha, beta, config=None):
    """int_0^inf exp(-x) x^beta / (x + alpha) dx = e^alpha E_(1+beta)(alpha) Gamma(1+beta)."""
    _check_argument('alpha', alpha)
    if not math.isfinite(beta) or beta <= -1:
        raise DomainError(f'beta must exceed -1, got {beta}')
    config = _resolve(config)
    return scaled_exp_integral(1.0 + beta, alpha, config) * gamma(1.0 + beta, config)
