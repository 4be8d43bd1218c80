"""
Dense solvers for the moment matrices.

Float systems go through partial-pivot LU with row equilibration and
iterative refinement.  Rational systems use fraction-free (Bareiss)
elimination, and small ones can also be solved by literal cofactor
expansion as a reference.
"""
import logging
import math
from fractions import Fraction

import numpy as np
import scipy.linalg

from .exceptions import SingularMatrixError

logger = logging.getLogger(__name__)


def condition_estimate(matrix):
    """2-norm condition number; inf for a singular matrix."""
    matrix = np.asarray(matrix, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        value = np.linalg.cond(matrix)
    return float(value) if np.isfinite(value) else float('inf')


def equilibrate(matrix, rhs=None):
    """Scale every row to unit max-norm; returns (scaled, scaled_rhs, scale)."""
    matrix = np.asarray(matrix, dtype=float)
    scale = np.max(np.abs(matrix), axis=1)
    if np.any(scale == 0):
        raise SingularMatrixError('matrix has a zero row', float('inf'))
    scaled_rhs = None if rhs is None else np.asarray(rhs, dtype=float) / scale
    return matrix / scale[:, None], scaled_rhs, scale


def equilibrated_condition(matrix):
    """Condition estimate of the row-equilibrated matrix, the one LU actually factors."""
    try:
        scaled, _, _ = equilibrate(matrix)
    except SingularMatrixError:
        return float('inf')
    return condition_estimate(scaled)


def is_numerically_singular(condition):
    return not math.isfinite(condition) or condition * np.finfo(float).eps >= 1.0


def lu_solve_refined(matrix, rhs, refinements=2):
    scaled, scaled_rhs, _ = equilibrate(matrix, rhs)
    condition = condition_estimate(scaled)
    if is_numerically_singular(condition):
        raise SingularMatrixError('matrix is numerically singular', condition)
    lu, piv = scipy.linalg.lu_factor(scaled, check_finite=True)
    if np.any(np.diag(lu) == 0):
        raise SingularMatrixError('LU factorization hit a zero pivot', condition)
    solution = scipy.linalg.lu_solve((lu, piv), scaled_rhs)
    for _ in range(refinements):
        residual = scaled_rhs - scaled @ solution
        solution = solution + scipy.linalg.lu_solve((lu, piv), residual)
    return solution


# =========================
# Exact elimination
# =========================

def _fraction_rows(rows):
    return [[Fraction(value) for value in row] for row in rows]


def _bareiss_eliminate(rows, columns):
    """In-place fraction-free elimination; returns (rows, sign) or None if singular."""
    size = len(rows)
    sign = 1
    previous = Fraction(1)
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if rows[i][k] != 0), None)
            if swap is None:
                return None
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, columns):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / previous
            rows[i][k] = Fraction(0)
        previous = rows[k][k]
    if rows[size - 1][size - 1] == 0:
        return None
    return rows, sign


def bareiss_determinant(rows):
    rows = _fraction_rows(rows)
    if not rows:
        return Fraction(1)
    eliminated = _bareiss_eliminate(rows, len(rows))
    if eliminated is None:
        return Fraction(0)
    rows, sign = eliminated
    return sign * rows[-1][-1]


def bareiss_solve(rows, rhs):
    size = len(rows)
    augmented = [row + [Fraction(value)] for row, value in zip(_fraction_rows(rows), rhs)]
    eliminated = _bareiss_eliminate(augmented, size + 1)
    if eliminated is None:
        raise SingularMatrixError('matrix is singular over the rationals', float('inf'))
    augmented, _ = eliminated
    solution = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        total = augmented[i][size] - sum(augmented[i][j] * solution[j] for j in range(i + 1, size))
        solution[i] = total / augmented[i][i]
    return solution


def cofactor_determinant(rows):
    """Laplace expansion along the first row."""
    rows = [list(row) for row in rows]
    if not rows:
        return 1
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j, entry in enumerate(rows[0]):
        if entry == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * entry * cofactor_determinant(minor)
    return total


def cramer_solve(rows, rhs, determinant=cofactor_determinant):
    rows = [list(row) for row in rows]
    denominator = determinant(rows)
    if denominator == 0:
        raise SingularMatrixError('zero determinant in Cramer solve', float('inf'))
    solution = []
    for k in range(len(rows)):
        replaced = [row[:k] + [value] + row[k + 1:] for row, value in zip(rows, rhs)]
        numerator = determinant(replaced)
        if isinstance(numerator, (int, Fraction)) and isinstance(denominator, (int, Fraction)):
            solution.append(Fraction(numerator) / Fraction(denominator))
        else:
            solution.append(numerator / denominator)
    return solution


def rational_rank(rows):
    """Rank by Gaussian elimination over the rationals."""
    rows = _fraction_rows(rows)
    if not rows:
        return 0
    columns = len(rows[0])
    rank = 0
    for col in range(columns):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col] / rows[rank][col]
            if factor:
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank
