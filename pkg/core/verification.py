"""
Invariant checks run by ``manage.py verify``.

Each check takes (n, alpha, config) and returns a ``VerificationRecord``;
cells are independent and fan out over a thread pool.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import moments, oracle, polys
from .conf import default_precision_config
from .exceptions import X1LaguerreError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class VerificationRecord:
    check: str
    n: int
    alpha: float
    residual: float
    tolerance: float
    passed: bool
    detail: str = ''


def _record(check, n, alpha, residual, tolerance, detail=''):
    residual = float(residual)
    passed = math.isfinite(residual) and residual <= tolerance
    return VerificationRecord(check, n, alpha, residual, tolerance, passed, detail)


def _relative(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


# =========================
# Checks
# =========================

def check_eigen(n, alpha, config, tolerance):
    """l[L_n] - (n-1) L_n, exact at the rational value of alpha."""
    polynomial = polys.construct(n, alpha, path=polys.PATH_TILDE, exact=True, config=config)
    operator = polys.OperatorExpression(polynomial.alpha)
    residual = operator.apply(polynomial) - polynomial.poly * operator.eigenvalue(n)
    return _record('eigen', n, alpha, polys.max_abs_coefficient(residual), tolerance)


def check_orthogonality(n, alpha, config, tolerance):
    current = polys.construct(n, alpha, config=config)
    worst = 0.0
    for m in range(1, n):
        other = polys.construct(m, alpha, config=config)
        value = oracle.inner_product(current, other, alpha, config).value
        worst = max(worst, abs(value) / math.sqrt(polys.norm_squared(n, alpha) * polys.norm_squared(m, alpha)))
    return _record('orthogonality', n, alpha, worst, tolerance, f'compared against L_1..L_{n - 1}')


def check_norm(n, alpha, config, tolerance):
    polynomial = polys.construct(n, alpha, config=config)
    value = oracle.inner_product(polynomial, polynomial, alpha, config).value
    return _record('norm', n, alpha, _relative(value, polys.norm_squared(n, alpha)), tolerance)


def check_three_term(n, alpha, config, tolerance):
    exact_alpha = polys.exact_alpha(alpha)
    members = [polys.x1_from_classical(m, exact_alpha) for m in (n, n + 1, n + 2)]
    residual = polys.three_term_residual(*members, n, exact_alpha)
    return _record('three_term', n, alpha, polys.max_abs_coefficient(residual), tolerance,
                   f'L_{n}, L_{n + 1}, L_{n + 2}')


def check_exceptional(n, alpha, config, tolerance):
    polynomial = polys.construct(n, alpha, config=config)
    residual = polys.exceptional_condition_residual(polynomial, alpha)
    scale = max(polys.max_abs_coefficient(polynomial), 1.0)
    return _record('exceptional', n, alpha, abs(residual) / scale, tolerance)


def check_representation(n, alpha, config, tolerance):
    """A path, tilde path and classical representation agree coefficient-wise."""
    variants = [polys.construct(n, alpha, path=path, config=config) for path in polys.PATHS]
    reference = variants[-1].coeffs_x
    scale = max(abs(c) for c in reference)
    worst = max(
        abs(a - b) / scale
        for variant in variants[:-1]
        for a, b in zip(variant.coeffs_x, reference)
    )
    return _record('representation', n, alpha, worst, tolerance)


def check_moments(n, alpha, config, tolerance):
    """Numeric adjusted routes agree on indices 0..2n."""
    k_max = 2 * n
    reference = moments.adjusted_moment_table(alpha, k_max, moments.RECURSION, config)
    worst = 0.0
    for route in (moments.CLOSED_FORM, moments.MATRIX_PRODUCT, moments.GENERATING_FUNCTION):
        table = moments.adjusted_moment_table(alpha, k_max, route, config)
        worst = max(worst, moments.max_relative_discrepancy(reference.values, table.values))
    return _record('moments', n, alpha, worst, tolerance, f'k <= {k_max}')


def check_quadrature(n, alpha, config, tolerance):
    k_max = 2 * n
    worst = 0.0
    for kind, builder in ((moments.ADJUSTED, moments.adjusted_moment_table),
                          (moments.CANONICAL, moments.canonical_moment_table)):
        primary = builder(alpha, k_max, config=config)
        integrated = builder(alpha, k_max, moments.QUADRATURE, config)
        worst = max(worst, moments.max_relative_discrepancy(primary.values, integrated.values))
    return _record('quadrature', n, alpha, worst, tolerance, f'k <= {k_max}')


def check_canonical(n, alpha, config, tolerance):
    report = moments.canonical_recursion_report(2 * n, alpha, config)
    return _record('canonical', n, alpha, report['max_relative_discrepancy'], tolerance)


def check_generating(n, alpha, config, tolerance):
    k_max = 2 * n
    worst = 0.0
    for k in range(k_max + 1):
        series = moments.taylor_coefficient(k, alpha, 'series', config)
        contour = moments.taylor_coefficient(k, alpha, 'cauchy', config)
        worst = max(worst, _relative(series, contour))
    for t in (-0.5, 0.0, 0.3, 0.7):
        value = moments.generating_function(t, alpha, config)
        worst = max(worst, abs(moments.generating_ode_residual(t, alpha, config)) / abs(value))
    return _record('generating', n, alpha, worst, tolerance)


# name -> (check, default tolerance)
CHECKS = {
    'eigen': (check_eigen, 0.0),
    'orthogonality': (check_orthogonality, 1e-8),
    'norm': (check_norm, 1e-7),
    'three_term': (check_three_term, 0.0),
    'exceptional': (check_exceptional, 1e-10),
    'representation': (check_representation, 1e-8),
    'moments': (check_moments, 1e-9),
    'quadrature': (check_quadrature, 1e-8),
    'canonical': (check_canonical, 1e-10),
    'generating': (check_generating, 1e-9),
}


def _run_cell(name, n, alpha, config, tolerance):
    check, default_tolerance = CHECKS[name]
    tolerance = default_tolerance if tolerance is None else tolerance
    try:
        return check(n, alpha, config, tolerance)
    except X1LaguerreError as exc:
        logger.warning('%s check failed for n=%d alpha=%s: %s', name, n, alpha, exc)
        return VerificationRecord(name, n, alpha, math.inf, tolerance, False, str(exc))


def run_checks(n_max, alphas, checks=None, tolerance=None, config=None):
    """Run every (check, n, alpha) cell; records come back sorted."""
    config = config or default_precision_config()
    checks = list(checks or CHECKS)
    unknown = [name for name in checks if name not in CHECKS]
    if unknown:
        raise ValueError(f'unknown checks: {", ".join(unknown)}')
    cells = [(name, n, alpha) for name in checks for n in range(1, n_max + 1) for alpha in alphas]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = [pool.submit(_run_cell, name, n, alpha, config, tolerance) for name, n, alpha in cells]
        records = [future.result() for future in futures]
    failures = sum(not record.passed for record in records)
    logger.info('verify: %d cells, %d failures', len(records), failures)
    return sorted(records)
