##########################################################################
# Wiener-Hopf index toolkit: cone strata, index complexes, cone metrics
# Copyright (C) 2024  Amelia Dobis
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
##########################################################################

import random
import unittest
from fractions import Fraction

import sympy

from src.whindex.errors import DependentColumnsError, DimensionMismatchError
from src.whindex.ratlin import *

def rand_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]

class RatlinTestRank(unittest.TestCase):
    """Exact rank, kernels and orthogonal complements"""

    def test_rank(self):
        self.assertEqual(rank(RationalMatrix.identity(3)), 3)
        self.assertEqual(rank(RationalMatrix.from_rows([[1, 1], [2, 2]])), 1)
        self.assertEqual(rank(RationalMatrix.from_rows([[2, 0], [0, 3]])), 2)
        self.assertEqual(rank(RationalMatrix.zeros(2, 3)), 0)

    def test_rank_against_sympy(self):
        rng = random.Random(7)
        for _ in range(40):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            A = rand_matrix(rng, rows, cols, -2, 2)
            self.assertEqual(rank(RationalMatrix.from_rows(A)), sympy.Matrix(A).rank())

    def test_nullspace(self):
        K = nullspace(RationalMatrix.from_rows([[1, 1]]))
        self.assertEqual(K.cols, 1)
        self.assertTrue(same_span(K, RationalMatrix.from_columns([[1, -1]])))
        self.assertEqual(nullspace(RationalMatrix.identity(3)).cols, 0)
        K = nullspace(RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0]]))
        self.assertTrue(same_span(K, RationalMatrix.from_columns([[0, 0, 1]])))

    def test_nullspace_is_kernel(self):
        rng = random.Random(11)
        for _ in range(25):
            A = RationalMatrix.from_rows(rand_matrix(rng, rng.randint(1, 4), rng.randint(2, 5)))
            K = nullspace(A)
            self.assertEqual(K.cols, A.cols - rank(A))
            self.assertTrue((A @ K).is_zero())

    def test_orthogonal_complement(self):
        C = orthogonal_complement(RationalMatrix.from_columns([[1, 0, 0]]))
        self.assertTrue(same_span(C, RationalMatrix.from_columns([[0, 1, 0], [0, 0, 1]])))
        C = orthogonal_complement(RationalMatrix.from_columns([[1, 1]]))
        self.assertTrue(same_span(C, RationalMatrix.from_columns([[1, -1]])))
        C = orthogonal_complement(RationalMatrix.from_columns([[1, 2, 2]]))
        self.assertEqual(C.cols, 2)
        for c in C.columns():
            self.assertEqual(dot(c, vector([1, 2, 2])), 0)

    def test_orthogonal_complement_twice(self):
        rng = random.Random(9)
        for _ in range(40):
            n = rng.randint(1, 5)
            B = column_basis(RationalMatrix.from_rows(rand_matrix(rng, n, rng.randint(1, n))))
            if B.cols == 0:
                continue
            C = orthogonal_complement(B)
            self.assertEqual(B.cols + C.cols, n)
            self.assertTrue(same_span(orthogonal_complement(C), B))

    def test_dependent_columns(self):
        with self.assertRaises(DependentColumnsError):
            orthogonal_complement(RationalMatrix.from_columns([[1, 1], [2, 2]]))

class RatlinTestSolve(unittest.TestCase):
    """Elimination helpers"""

    def test_parse_rational(self):
        self.assertEqual(parse_rational("3/6"), Fraction(1, 2))
        self.assertEqual(parse_rational("-4"), Fraction(-4))
        for bad in ("1/0", "x", "1.5", ""):
            with self.assertRaises(ValueError):
                parse_rational(bad)

    def test_primitive(self):
        self.assertEqual(primitive(vector(["1/2", "1/3", "0"])), vector([3, 2, 0]))
        self.assertEqual(primitive(vector([0, -4, 6])), vector([0, -2, 3]))

    def test_rref(self):
        R, pivots = rref(RationalMatrix.from_rows([[2, 4, 2], [1, 2, 3]]))
        self.assertEqual(pivots, [0, 2])
        self.assertEqual(R.row(0), vector([1, 2, 0]))
        self.assertEqual(R.row(1), vector([0, 0, 1]))

    def test_solve_in_basis(self):
        B = RationalMatrix.from_columns([[1, 0, 1], [0, 1, 1]])
        X = solve_in_basis(B, RationalMatrix.from_columns([[2, 3, 5]]))
        self.assertEqual(X.column(0), vector([2, 3]))
        with self.assertRaises(ValueError):
            solve_in_basis(B, RationalMatrix.from_columns([[1, 0, 0]]))

    def test_determinant_and_inverse(self):
        rng = random.Random(3)
        for _ in range(20):
            A = rand_matrix(rng, 3, 3)
            M = RationalMatrix.from_rows(A)
            self.assertEqual(determinant(M), Fraction(int(sympy.Matrix(A).det())))
            if determinant(M) != 0:
                self.assertEqual(M @ inverse(M), RationalMatrix.identity(3))

    def test_shape_errors(self):
        with self.assertRaises(DimensionMismatchError):
            RationalMatrix.from_rows([[1, 2], [3]])
        with self.assertRaises(DimensionMismatchError):
            RationalMatrix.identity(2) @ RationalMatrix.identity(3)

class RatlinTestSmith(unittest.TestCase):
    """Smith normal form"""

    def test_examples(self):
        self.assertEqual(smith_normal_form([[2, 0], [0, 3]]).invariant_factors, (1, 6))
        self.assertEqual(smith_normal_form([[0, 0], [0, 0]]).invariant_factors, ())
        self.assertEqual(smith_normal_form([[1, 0], [0, 1]]).invariant_factors, (1, 1))

    def test_unimodular_factorisation(self):
        rng = random.Random(5)
        for _ in range(30):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            A = rand_matrix(rng, rows, cols, -6, 6)
            r = smith_normal_form(A)
            U, S, V = sympy.Matrix(r.U), sympy.Matrix(r.S), sympy.Matrix(r.V)
            self.assertEqual(U * sympy.Matrix(A) * V, S)
            self.assertEqual(abs(U.det()), 1)
            self.assertEqual(abs(V.det()), 1)
            f = r.invariant_factors
            self.assertTrue(all(b % a == 0 for a, b in zip(f, f[1:])))
            self.assertEqual(r.rank, sympy.Matrix(A).rank())

    # d_1 is the gcd of the entries and d_1·d_2·d_3 = |det A|
    def test_determinantal_divisors(self):
        rng = random.Random(17)
        for _ in range(20):
            A = rand_matrix(rng, 3, 3, -5, 5)
            f = smith_normal_form(A).invariant_factors
            det = abs(int(sympy.Matrix(A).det()))
            if det == 0:
                self.assertLess(len(f), 3)
                continue
            self.assertEqual(len(f), 3)
            self.assertEqual(f[0] * f[1] * f[2], det)
            self.assertEqual(f[0], int(sympy.gcd([sympy.Integer(x) for row in A for x in row])))

if __name__ == '__main__':
    unittest.main()
