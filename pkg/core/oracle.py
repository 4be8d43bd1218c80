"""
Brute-force integration against W(x) = x^alpha e^-x / (x + alpha)^2 on
[0, inf).  Everything else in the package is checked against these numbers,
so they share no code with the moment formulas beyond the tail bound.
"""
import logging
import math
import threading
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.special
from numpy.polynomial import Polynomial

from .algebra import RationalPoly
from .conf import default_precision_config
from .exceptions import ConfigurationError, DomainError, NonConvergenceError
from .specfun import upper_incomplete_gamma

logger = logging.getLogger(__name__)

SPLIT_TANH_SINH = 'split_tanh_sinh'
GAUSS_LAGUERRE = 'generalized_gauss_laguerre'

# tanh-sinh abscissae are taken on t in [-T, T]
_TANH_SINH_SPAN = 4.0
_MAX_TRUNCATION_DOUBLINGS = 6


@dataclass(frozen=True)
class QuadratureConfig:
    strategy: str = SPLIT_TANH_SINH
    truncation_x_max: float = 0.0
    levels: int = 10
    nodes: int = 120
    target_rel_tol: float = 1e-10

    def __post_init__(self):
        if self.strategy not in (SPLIT_TANH_SINH, GAUSS_LAGUERRE):
            raise ConfigurationError(f'unknown quadrature strategy {self.strategy!r}')
        if not 1e-14 <= self.target_rel_tol <= 1e-4:
            raise ConfigurationError(f'target_rel_tol must lie in [1e-14, 1e-4], got {self.target_rel_tol}')
        if self.levels < 2 or self.nodes < 2 or self.truncation_x_max < 0:
            raise ConfigurationError('levels and nodes must be at least 2, truncation non-negative')

    @classmethod
    def from_precision(cls, config=None):
        config = config or default_precision_config()
        return cls(
            strategy=config.quad_strategy,
            truncation_x_max=config.quad_truncation,
            levels=config.quad_max_levels,
            nodes=config.gauss_nodes,
            target_rel_tol=config.target_rel_tol,
        )

    def truncation_point(self, alpha):
        if self.truncation_x_max > 0:
            return self.truncation_x_max
        return max(40.0, alpha + 40.0 * math.log10(1.0 / self.target_rel_tol))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    abs_integral: float
    levels: int
    strategy: str

    def __float__(self):
        return self.value


def _as_integrand(f):
    """(vectorized callable, float monomial coefficients or None)."""
    if hasattr(f, 'poly'):
        f = f.poly
    if isinstance(f, RationalPoly):
        coefficients = f.to_numpy()
        return Polynomial(coefficients), coefficients
    if isinstance(f, Polynomial):
        return f, np.asarray(f.coef, dtype=float)
    if callable(f):
        return f, None
    coefficients = np.asarray(f, dtype=float)
    return Polynomial(coefficients), coefficients


def _log_weight(x, alpha):
    return alpha * np.log(x) - x - 2.0 * np.log(x + alpha)


def tail_bound(coeffs, alpha, x_max, config=None):
    """Bound on int_X^inf |f| W using |f| W <= sum |c_j| x^(j+alpha-2) e^-x."""
    total = 0.0
    for j, c in enumerate(np.asarray(coeffs, dtype=float)):
        if c:
            total += abs(c) * float(upper_incomplete_gamma(j + alpha - 1.0, x_max, config))
    return total


def _tanh_sinh(integrand, alpha, quad_config, x_max):
    previous = None
    error = math.inf
    value = abs_value = 0.0
    for level in range(quad_config.levels):
        h = 2.0 ** -level
        t = np.arange(-_TANH_SINH_SPAN, _TANH_SINH_SPAN + h / 2, h)
        s = math.pi * np.sinh(t)
        x = x_max * scipy.special.expit(s)
        jacobian = x_max * math.pi * np.cosh(t) * scipy.special.expit(s) * scipy.special.expit(-s)
        keep = (x > 0) & (jacobian > 0)
        x, jacobian = x[keep], jacobian[keep]
        weighted = integrand(x) * np.exp(_log_weight(x, alpha)) * jacobian
        value = h * float(np.sum(weighted))
        abs_value = h * float(np.sum(np.abs(weighted)))
        if previous is not None:
            error = abs(value - previous)
            if level >= 3 and error <= quad_config.target_rel_tol * abs_value:
                logger.debug('tanh-sinh converged at level %d (X=%.1f)', level, x_max)
                return value, error, abs_value, level + 1
        previous = value
    raise NonConvergenceError(
        f'tanh-sinh did not reach rel tol {quad_config.target_rel_tol} in {quad_config.levels} levels',
        value,
    )


_NODE_CACHE = {}
_NODE_LOCK = threading.Lock()


def gauss_laguerre_nodes(alpha, nodes):
    """Nodes and weights for x^alpha e^-x by Golub-Welsch, cached per (alpha, nodes)."""
    key = (float(alpha), int(nodes))
    with _NODE_LOCK:
        cached = _NODE_CACHE.get(key)
        if cached is None:
            i = np.arange(nodes, dtype=float)
            diagonal = 2.0 * i + alpha + 1.0
            off_diagonal = np.sqrt(i[1:] * (i[1:] + alpha))
            points, vectors = scipy.linalg.eigh_tridiagonal(diagonal, off_diagonal)
            weights = math.exp(scipy.special.gammaln(alpha + 1.0)) * vectors[0] ** 2
            cached = (points, weights)
            _NODE_CACHE[key] = cached
            logger.debug('computed %d generalized Gauss-Laguerre nodes for alpha=%s', nodes, alpha)
    return cached


def _gauss_laguerre(integrand, alpha, quad_config):
    def rule(count):
        points, weights = gauss_laguerre_nodes(alpha, count)
        terms = weights * integrand(points) / (points + alpha) ** 2
        return float(np.sum(terms)), float(np.sum(np.abs(terms)))

    coarse, _ = rule(quad_config.nodes)
    value, abs_value = rule(2 * quad_config.nodes)
    error = abs(value - coarse)
    if error > quad_config.target_rel_tol * abs_value:
        raise NonConvergenceError(
            f'Gauss-Laguerre with {2 * quad_config.nodes} nodes missed rel tol {quad_config.target_rel_tol}',
            value,
        )
    return value, error, abs_value


def weighted_integral(f, alpha, config=None, quad_config=None):
    """int_0^inf f(x) W(x) dx for a polynomial or vectorized callable f."""
    if not math.isfinite(alpha) or alpha <= 0:
        raise DomainError(f'alpha must be positive, got {alpha}')
    quad_config = quad_config or QuadratureConfig.from_precision(config)
    integrand, coefficients = _as_integrand(f)
    if quad_config.strategy == GAUSS_LAGUERRE:
        value, error, abs_value = _gauss_laguerre(integrand, alpha, quad_config)
        return QuadratureResult(value, error, abs_value, 2, GAUSS_LAGUERRE)

    x_max = quad_config.truncation_point(alpha)
    for _ in range(_MAX_TRUNCATION_DOUBLINGS + 1):
        value, error, abs_value, levels = _tanh_sinh(integrand, alpha, quad_config, x_max)
        if coefficients is None:
            logger.debug('no tail certificate for a callable integrand beyond X=%.1f', x_max)
            return QuadratureResult(value, error, abs_value, levels, SPLIT_TANH_SINH)
        tail = tail_bound(coefficients, alpha, x_max, config)
        if tail <= quad_config.target_rel_tol * abs_value:
            return QuadratureResult(value, error + tail, abs_value, levels, SPLIT_TANH_SINH)
        if quad_config.truncation_x_max > 0:
            # a fixed truncation point is never moved
            break
        logger.info('tail bound %.3e beyond X=%.1f is above tolerance; doubling X', tail, x_max)
        x_max *= 2.0
    raise NonConvergenceError(
        f'tail beyond X={x_max:g} is bounded by {tail:.3e}, above rel tol {quad_config.target_rel_tol}',
        error + tail,
    )


def _float_poly(p):
    if hasattr(p, 'poly'):
        p = p.poly
    if isinstance(p, RationalPoly):
        return Polynomial(p.to_numpy())
    if isinstance(p, Polynomial):
        return p
    return Polynomial(np.asarray(p, dtype=float))


def inner_product(p, q, alpha, config=None, quad_config=None):
    return weighted_integral(_float_poly(p) * _float_poly(q), alpha, config, quad_config)


def adjusted_moment_integral(k, alpha, config=None):
    return weighted_integral(Polynomial([alpha, 1.0]) ** k, alpha, config)


def canonical_moment_integral(k, alpha, config=None):
    return weighted_integral(Polynomial.basis(k), alpha, config)
