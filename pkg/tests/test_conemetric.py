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

import numpy as np
from pydantic import ValidationError

from src.whindex.conemetric import *
from src.whindex.errors import MetricRegimeError, StratumIndexError
from src.whindex.polycone import double_description
from src.whindex.strata import stratify

SQUARE = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]]

def ray(*v):
    return double_description(len(v), generators=[list(v)])

def random_cone(rng: random.Random):
    gens = [[rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(1, 4)] for _ in range(rng.randint(1, 5))]
    return double_description(3, generators=gens)

class MetricTestExcess(unittest.TestCase):
    """Excess and the truncated Hausdorff metric"""

    def test_examples(self):
        Q = double_description(2, generators=[[1, 0], [0, 1]])
        self.assertAlmostEqual(excess(ray(1, 1), Q), 0.0, places=9)
        self.assertAlmostEqual(excess(ray(1, 0), ray(0, 1)), 1.0, places=9)
        self.assertAlmostEqual(hausdorff_h(Q, Q), 0.0, places=9)

    def test_rays_at_angle(self):
        for theta in np.linspace(0, np.pi / 2, 7):
            e2 = [np.cos(theta), np.sin(theta)]
            h = hausdorff_h(float_ray_cone([1.0, 0.0]), float_ray_cone(e2))
            self.assertLessEqual(abs(h - np.sin(theta)), 5e-3)

    def test_symmetric(self):
        rng = random.Random(31)
        for _ in range(10):
            A, B = random_cone(rng), random_cone(rng)
            self.assertEqual(hausdorff_h(A, B), hausdorff_h(B, A))

    def test_triangle_inequality(self):
        rng = random.Random(32)
        tol = MetricConfig().tolerance
        for _ in range(10):
            A, B, C = random_cone(rng), random_cone(rng), random_cone(rng)
            self.assertLessEqual(hausdorff_h(A, C), hausdorff_h(A, B) + hausdorff_h(B, C) + 2 * tol)

    def test_excess_under_finer_grid(self):
        # against a ray, or from a ray, the excess is attained at a generator
        rng = random.Random(33)
        pairs = [(random_cone(rng), float_ray_cone([0.3, -0.8, 0.5])) for _ in range(5)]
        pairs += [(float_ray_cone([1.0, 2.0, -2.0]), random_cone(rng)) for _ in range(5)]
        pairs += [(random_cone(rng), ray(0, 1, 3))]
        for A, B in pairs:
            values = [excess(A, B, MetricConfig(sphere_samples_per_dim=m)) for m in (8, 16, 32)]
            for coarse, fine in zip(values, values[1:]):
                self.assertGreaterEqual(fine, coarse - 1e-9)

    def test_orthant_against_half_space(self):
        Q = double_description(3, generators=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        H = double_description(3, inequalities=[[1, 0, 0]])
        # distance to the orthant is the norm of the negative part
        X = np.random.default_rng(34).normal(size=(20000, 3))
        X[:, 0] = np.abs(X[:, 0])
        X /= np.linalg.norm(X, axis=1)[:, None]
        brute = float(np.linalg.norm(np.minimum(X, 0.0), axis=1).max())
        self.assertAlmostEqual(excess(Q, H), 0.0, places=9)
        self.assertLessEqual(abs(excess(H, Q) - brute), 5e-3)
        self.assertLessEqual(abs(hausdorff_h(Q, H) - 1.0), 5e-3)

    def test_ray_distance(self):
        self.assertEqual(ray_distance([1, 0], [1, 0]), 0.0)
        self.assertAlmostEqual(ray_distance([1, 0], [0, 1]), 1.0)
        c = np.cos(np.pi / 4)
        self.assertAlmostEqual(ray_distance([1, 0], [c, c]), np.sqrt(0.5))
        with self.assertRaises(MetricRegimeError):
            ray_distance([1, 0], [-1, 0])
        with self.assertRaises(MetricRegimeError):
            ray_distance([2, 0], [1, 0])

    def test_ray_formula(self):
        self.assertLessEqual(ray_formula_check(pairs=720), 5e-3)

    def test_sphere_grid(self):
        X = sphere_grid(3, 8)
        self.assertEqual(X.shape, (72, 3))
        self.assertTrue(np.allclose(np.linalg.norm(X, axis=1), 1.0))
        # doubling m refines the grid
        Y = sphere_grid(3, 16)
        gaps = np.linalg.norm(X[:, None, :] - Y[None, :, :], axis=2).min(axis=1)
        self.assertLessEqual(float(gaps.max()), 1e-12)

    def test_config(self):
        self.assertEqual(MetricConfig().samples_for(2), 720)
        self.assertEqual(MetricConfig(sphere_samples_per_dim=10).samples_for(3), 10)
        with self.assertRaises(ValidationError):
            MetricConfig(tolerance=0)

class MetricTestPolarity(unittest.TestCase):
    """Polarity is an isometry"""

    def test_equal_cones(self):
        C = double_description(3, generators=SQUARE)
        r = polarity_isometry_check(C, C)
        self.assertAlmostEqual(r.gap, 0.0, places=9)
        self.assertTrue(r.ok)

    def test_rays_and_half_planes(self):
        for theta in (0.3, 0.9, 1.4):
            r = polarity_isometry_check(float_ray_cone([1.0, 0.0]), float_ray_cone([np.cos(theta), np.sin(theta)]))
            self.assertTrue(r.ok)
            self.assertLessEqual(abs(r.h_primal - np.sin(theta)), 5e-3)

    def test_random_pairs(self):
        rng = random.Random(12)
        for _ in range(20):
            r = polarity_isometry_check(random_cone(rng), random_cone(rng))
            self.assertLessEqual(r.gap, 5e-3)

class MetricTestLipschitz(unittest.TestCase):
    """h(F1, F2) ≤ |e1 - e2| ≤ √2·h(F1, F2) on the fibres of ξ"""

    def test_square(self):
        S = stratify(double_description(3, generators=SQUARE))
        r = lipschitz_probe(S.strata[0][0], S)
        # opposite facets of Ω* have obtuse e-vectors
        self.assertEqual(r.checked, 4)
        self.assertEqual(r.skipped, 2)
        self.assertTrue(r.ok)
        # adjacent facet cones sit at sampled distance √3/2, not the ray formula 0.943
        for pair in r.pairs:
            self.assertAlmostEqual(pair["h"], np.sqrt(3) / 2, delta=5e-3)
            self.assertGreater(abs(pair["h"] - 0.9428), 0.05)
            self.assertAlmostEqual(pair["norm"], np.sqrt(4 / 3), places=9)

    def test_zero_face(self):
        S = stratify(double_description(3, generators=SQUARE))
        with self.assertRaises(StratumIndexError):
            lipschitz_probe(S.strata[3][0], S)

    def test_lorentz(self):
        for n in (3, 4):
            r = lorentz_lipschitz_probe(n, samples=720)
            self.assertTrue(r.ok)
            self.assertEqual(r.skipped, 0)
            self.assertGreaterEqual(r.checked, 720)

if __name__ == '__main__':
    unittest.main()
