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

import numpy as np

from src.whindex.errors import (DimensionMismatchError, FaceNotInLatticeError, InputError,
                                NotPointedError, ZeroVectorError)
from src.whindex.polycone import *
from src.whindex.ratlin import add, dot, scale, sub, vector

SQUARE = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]]

def vecs(rows) -> set:
    return {vector(r) for r in rows}

def key_of(C: Cone, rows) -> tuple[int, ...]:
    return tuple(sorted(C.generators.index(vector(r)) for r in rows))

def random_cone(rng: random.Random, n: int) -> Cone:
    # generators around the positive last axis, so the cone is pointed and solid
    gens = [[rng.randint(-3, 3) for _ in range(n - 1)] + [rng.randint(1, 3)] for _ in range(rng.randint(n, n + 3))]
    gens += [[0] * (n - 1) + [1]] + [[int(i == k) for i in range(n - 1)] + [1] for k in range(n - 1)]
    return double_description(n, generators=gens)

class PolyconeTestDoubleDescription(unittest.TestCase):
    """Conversion between generators and inequalities"""

    def test_quadrant(self):
        C = double_description(2, generators=[[1, 0], [0, 1]])
        self.assertEqual(vecs(C.inequalities), vecs([[1, 0], [0, 1]]))
        self.assertTrue(C.pointed and C.solid)

    def test_square_cone(self):
        C = double_description(3, generators=SQUARE)
        self.assertEqual(vecs(C.inequalities), vecs([[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]))
        self.assertEqual(vecs(C.generators), vecs(SQUARE))

    def test_half_line_from_inequality(self):
        C = double_description(1, inequalities=[[1]])
        self.assertEqual(C.generators, (vector([1]),))

    def test_redundant_generators(self):
        C = double_description(2, generators=[[1, 0], [0, 1], [1, 1], [2, 0]])
        self.assertEqual(vecs(C.generators), vecs([[1, 0], [0, 1]]))

    def test_lineality(self):
        C = double_description(2, generators=[[1, 0], [-1, 0], [0, 1]])
        self.assertFalse(C.pointed)
        self.assertTrue(C.solid)
        self.assertEqual(vecs(C.inequalities), vecs([[0, 1]]))
        D = dual_cone(C)
        self.assertTrue(D.pointed)
        self.assertFalse(D.solid)

    def test_round_trip(self):
        rng = random.Random(1)
        for _ in range(15):
            C = random_cone(rng, rng.choice([3, 4]))
            back = double_description(C.ambient_dim, inequalities=C.inequalities)
            self.assertEqual(set(back.generators), set(C.generators))
            self.assertTrue(same_cone(C, back))

    def test_errors(self):
        with self.assertRaises(ZeroVectorError):
            double_description(2, generators=[[0, 0], [1, 0]])
        with self.assertRaises(InputError):
            double_description(2)
        with self.assertRaises(InputError):
            double_description(2, generators=[[1, 0]], inequalities=[[1, 0]])
        with self.assertRaises(DimensionMismatchError):
            double_description(2, generators=[[1, 0, 0]])

class PolyconeTestDuality(unittest.TestCase):
    """Dual cones and dual faces"""

    def test_dual_cone(self):
        Q = double_description(2, generators=[[1, 0], [0, 1]])
        self.assertTrue(same_cone(dual_cone(Q), Q))
        H = double_description(1, generators=[[1]])
        self.assertTrue(same_cone(dual_cone(H), H))
        S = dual_cone(double_description(3, generators=SQUARE))
        self.assertEqual(vecs(S.generators), vecs([[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]))

    def test_dual_of_dual(self):
        rng = random.Random(2)
        for _ in range(10):
            C = random_cone(rng, 3)
            self.assertTrue(same_cone(dual_cone(dual_cone(C)), C))

    def test_dual_face_quadrant(self):
        Q = double_description(2, generators=[[1, 0], [0, 1]])
        x_axis = make_face(Q, key_of(Q, [[1, 0]]))
        self.assertEqual(dual_face(x_axis, Q).generators, (vector([0, 1]),))

    def test_dual_face_square(self):
        C = double_description(3, generators=SQUARE)
        F = make_face(C, key_of(C, [[1, 1, 1], [1, -1, 1]]))
        self.assertEqual(F.dim, 2)
        # F lies in the plane x = z, so its dual face is the ray through (-1, 0, 1)
        self.assertEqual(dual_face(F, C).generators, (vector([-1, 0, 1]),))

    def test_dual_face_of_zero(self):
        C = double_description(3, generators=SQUARE)
        zero = face_lattice(C).bottom
        self.assertEqual(zero.dim, 0)
        self.assertEqual(set(dual_face(zero, C).generators), set(dual_cone(C).generators))

    def test_dual_face_dimensions(self):
        C = double_description(3, generators=SQUARE)
        for F in face_lattice(C).faces:
            self.assertEqual(F.dim + dual_face(F, C).dim, 3)

    def test_exposed(self):
        for gens in ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], SQUARE):
            C = double_description(3, generators=gens)
            for F in face_lattice(C).faces:
                self.assertTrue(is_exposed(F, C))

class PolyconeTestFaces(unittest.TestCase):
    """Face lattices"""

    def test_counts(self):
        Q3 = double_description(3, generators=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        self.assertEqual(len(face_lattice(Q3).faces), 8)
        S = face_lattice(double_description(3, generators=SQUARE))
        self.assertEqual(len(S.faces), 10)
        self.assertEqual([len(S.faces_of_dim(d)) for d in range(4)], [1, 4, 4, 1])
        H = face_lattice(double_description(1, generators=[[1]]))
        self.assertEqual(len(H.faces), 2)
        self.assertEqual(H.dims_present, (0, 1))

    def test_covering(self):
        L = face_lattice(double_description(3, generators=SQUARE))
        for child, parent in L.covering:
            self.assertEqual(L.faces[parent].dim, L.faces[child].dim + 1)
        # 4 + 8 + 4 cover relations in the square lattice
        self.assertEqual(len(L.covering), 16)

    def test_make_face(self):
        C = double_description(3, generators=SQUARE)
        with self.assertRaises(FaceNotInLatticeError):
            make_face(C, key_of(C, [[1, 1, 1], [-1, -1, 1]]))
        with self.assertRaises(FaceNotInLatticeError):
            make_face(C, [7])

    def test_not_pointed(self):
        with self.assertRaises(NotPointedError):
            face_lattice(double_description(2, generators=[[1, 0], [-1, 0], [0, 1]]))

class PolyconeTestProjection(unittest.TestCase):
    """Metric projection onto cones"""

    def test_exact(self):
        Q = double_description(2, generators=[[1, 0], [0, 1]])
        self.assertEqual(project_onto_cone([-1, 2], Q), vector([0, 2]))
        self.assertEqual(project_onto_cone([1, 2], Q), vector([1, 2]))
        C = double_description(3, generators=SQUARE)
        x = vector([3, 0, -1])
        p = project_onto_cone(x, C)
        self.assertTrue(moreau_holds(x, p, C))
        self.assertEqual(p, vector([1, 0, 1]))

    def test_projection_is_nearest(self):
        rng = random.Random(21)
        cones = [double_description(3, generators=SQUARE), random_cone(rng, 3),
                 double_description(2, generators=[[1, 0], [1, 3]])]
        for C in cones:
            n = C.ambient_dim
            x = vector([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)])
            p = project_onto_cone(x, C)
            self.assertTrue(C.contains(p))
            d_p = dot(sub(x, p), sub(x, p))
            for _ in range(100):
                c = [Fraction(0)] * n
                for g in C.generators:
                    c = add(c, scale(Fraction(rng.randint(0, 5), rng.randint(1, 3)), g))
                self.assertTrue(C.contains(c))
                self.assertLessEqual(d_p, dot(sub(x, c), sub(x, c)))

    def test_float_agrees_with_exact(self):
        rng = random.Random(4)
        C = double_description(3, generators=SQUARE)
        P = ConeProjector(C)
        for _ in range(30):
            x = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
            exact = as_float(project_onto_cone(x, C))
            self.assertTrue(np.allclose(P.project(as_float(x)), exact, atol=1e-9))

    def test_float_with_lineality(self):
        # the upper half-plane
        P = ConeProjector(double_description(2, generators=[[1, 0], [-1, 0], [0, 1]]))
        self.assertTrue(np.allclose(P.project([3.0, -2.0]), [3.0, 0.0]))
        self.assertTrue(np.allclose(P.project([-1.0, 5.0]), [-1.0, 5.0]))

if __name__ == '__main__':
    unittest.main()
