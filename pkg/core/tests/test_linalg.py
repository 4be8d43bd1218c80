from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from core import linalg
from core.exceptions import SingularMatrixError

F = Fraction

HILBERT_4 = [[F(1, i + j + 1) for j in range(4)] for i in range(4)]


class ExactEliminationTests(SimpleTestCase):
    def test_bareiss_determinant_matches_cofactor_expansion(self):
        matrices = [
            HILBERT_4,
            [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
            [[0, 1, 2], [3, 4, 5], [6, 7, 9]],
            [[F(1, 2), 3], [F(-2, 3), 5]],
        ]
        for rows in matrices:
            self.assertEqual(linalg.bareiss_determinant(rows), linalg.cofactor_determinant(rows))

    def test_hilbert_determinant(self):
        self.assertEqual(linalg.bareiss_determinant(HILBERT_4), F(1, 6048000))

    def test_singular_determinant_is_zero(self):
        self.assertEqual(linalg.bareiss_determinant([[1, 2], [2, 4]]), 0)

    def test_solvers_agree(self):
        rows = [[0, 1, 2], [3, 4, 5], [6, 7, 9]]
        rhs = [1, F(1, 2), -3]
        solution = linalg.bareiss_solve(rows, rhs)
        self.assertEqual(solution, linalg.cramer_solve(rows, rhs))
        for row, value in zip(rows, rhs):
            self.assertEqual(sum(a * x for a, x in zip(row, solution)), value)

    def test_singular_systems_raise(self):
        rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        with self.assertRaises(SingularMatrixError):
            linalg.bareiss_solve(rows, [1, 2, 3])
        with self.assertRaises(SingularMatrixError):
            linalg.cramer_solve(rows, [1, 2, 3])

    def test_rational_rank(self):
        self.assertEqual(linalg.rational_rank(HILBERT_4), 4)
        self.assertEqual(linalg.rational_rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]), 2)
        self.assertEqual(linalg.rational_rank([[0, 0], [0, 0]]), 0)
        self.assertEqual(linalg.rational_rank([]), 0)


class FloatSolveTests(SimpleTestCase):
    def test_refined_lu_matches_numpy(self):
        rng = np.random.default_rng(7)
        matrix = rng.normal(size=(6, 6)) * np.logspace(0, 3, 6)[:, None]
        rhs = rng.normal(size=6)
        solution = linalg.lu_solve_refined(matrix, rhs)
        np.testing.assert_allclose(solution, np.linalg.solve(matrix, rhs), rtol=1e-8, atol=1e-12)
        np.testing.assert_allclose(matrix @ solution, rhs, rtol=1e-9, atol=1e-9)

    def test_zero_row_is_singular(self):
        with self.assertRaises(SingularMatrixError):
            linalg.lu_solve_refined([[1.0, 2.0], [0.0, 0.0]], [1.0, 1.0])

    def test_condition_estimate(self):
        self.assertAlmostEqual(linalg.condition_estimate(np.diag([1.0, 1e-3])), 1e3, places=6)
        self.assertEqual(linalg.condition_estimate(np.diag([1.0, 0.0])), float('inf'))

    def test_equilibration_scales_rows(self):
        scaled, scaled_rhs, scale = linalg.equilibrate([[2.0, -8.0], [0.5, 0.25]], [4.0, 1.0])
        np.testing.assert_array_equal(scale, [8.0, 0.5])
        np.testing.assert_array_equal(scaled, [[0.25, -1.0], [1.0, 0.5]])
        np.testing.assert_array_equal(scaled_rhs, [0.5, 2.0])

    def test_badly_scaled_rows_are_not_singular(self):
        # raw condition ~1e20, equilibrated condition ~1
        matrix = np.diag([1.0, 1e-20]) @ np.array([[2.0, 1.0], [1.0, 3.0]])
        self.assertTrue(linalg.is_numerically_singular(linalg.condition_estimate(matrix)))
        self.assertFalse(linalg.is_numerically_singular(linalg.equilibrated_condition(matrix)))
        solution = linalg.lu_solve_refined(matrix, [3.0, 4e-20])
        np.testing.assert_allclose(solution, [1.0, 1.0], rtol=1e-14)

    def test_numerically_singular_matrix_raises(self):
        with self.assertRaises(SingularMatrixError):
            linalg.lu_solve_refined([[1.0, 1.0], [1.0, 1.0 + 1e-17]], [1.0, 1.0])
        self.assertEqual(linalg.equilibrated_condition([[0.0, 0.0], [1.0, 2.0]]), float('inf'))
