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

from src.whindex.curvedcones import LorentzCone
from src.whindex.errors import (NotSolidError, RayDegeneracyError, StratumIndexError,
                                ZeroVectorError)
from src.whindex.polycone import double_description
from src.whindex.ratlin import vector
from src.whindex.strata import *

SQUARE = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]]
QUADRANT3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

def strat(gens) -> Stratification:
    return stratify(double_description(len(gens[0]), generators=gens))

def random_strat(rng: random.Random, n: int) -> Stratification:
    gens = [[rng.randint(-3, 3) for _ in range(n - 1)] + [rng.randint(1, 3)] for _ in range(rng.randint(n, n + 3))]
    gens += [[0] * (n - 1) + [1]] + [[int(i == k) for i in range(n - 1)] + [1] for k in range(n - 1)]
    return strat(gens)

class StrataTestStratify(unittest.TestCase):
    """Strata of the dual cone"""

    def test_half_line(self):
        S = strat([[1]])
        self.assertEqual(S.dims, (0, 1))
        self.assertEqual(S.d, 1)
        self.assertEqual(S.sizes(), [1, 1])
        self.assertEqual(S.strata[0][0].dim, 1)
        self.assertEqual(S.strata[1][0].dim, 0)

    def test_fixtures(self):
        self.assertEqual(strat(SQUARE).sizes(), [1, 4, 4, 1])
        self.assertEqual(strat(SQUARE).dims, (0, 1, 2, 3))
        self.assertEqual(strat(QUADRANT3).sizes(), [1, 3, 3, 1])

    def test_not_solid(self):
        with self.assertRaises(NotSolidError):
            stratify(double_description(3, generators=[[1, 0, 0], [0, 1, 0]]))

    def test_sigma_fibres(self):
        S = strat(SQUARE)
        self.assertEqual([sigma_fibres(S, j)[0].dim for j in range(4)], [0, 1, 2, 3])
        for fib in sigma_fibres(S, 2):
            for v in fib.basis.columns():
                self.assertTrue(all(sum(a * b for a, b in zip(v, g)) == 0 for g in fib.face.generators))

class StrataTestIncidence(unittest.TestCase):
    """Incidence spaces and modular faces"""

    def test_square(self):
        S = strat(SQUARE)
        self.assertEqual([len(incidence_space(S, j).pairs) for j in (1, 2, 3)], [4, 8, 4])
        inc = incidence_space(S, 2)
        self.assertTrue(inc.xi_surjective and inc.eta_surjective)
        for E, F in incidence_space(S, 3).pairs:
            self.assertEqual(F.dim, 0)

    def test_quadrant(self):
        inc = incidence_space(strat(QUADRANT3), 1)
        self.assertEqual(len(inc.pairs), 3)
        self.assertTrue(inc.xi_surjective)

    def test_bad_index(self):
        S = strat(SQUARE)
        with self.assertRaises(StratumIndexError):
            incidence_space(S, 0)
        with self.assertRaises(StratumIndexError):
            incidence_space(S, 4)

    def test_modular(self):
        S = strat(SQUARE)
        for F in S.lattice.faces:
            self.assertEqual(is_modular(F, S), F.dim > 0)
        for j in (1, 2, 3):
            self.assertTrue(xi_image_is_modular(S, j))

    def test_lorentz_modular(self):
        LS = stratify_lorentz(LorentzCone(3), samples=16)
        self.assertEqual(LS.dims, (0, 1, 3))
        self.assertEqual(LS.sizes(), [1, None, 1])
        self.assertTrue(lorentz_is_modular(3, LS))
        self.assertFalse(lorentz_is_modular(0, LS))

class StrataTestPairGeometry(unittest.TestCase):
    """e_F(E), E_{1/2}(F) and the orthogonal decomposition of F⊥"""

    def test_quadrant2(self):
        S = strat([[1, 0], [0, 1]])
        # F is the x-axis ray of Ω*
        E, F = next((E, F) for E, F in incidence_space(S, 1).pairs if F.generators == (vector([1, 0]),))
        G = pair_geometry(E, F, S)
        self.assertEqual(G.e_vector_ray, vector([0, 1]))
        self.assertEqual(G.half_space_dim, 0)
        self.assertTrue(verify_decomposition(G))

    def test_square_all_pairs(self):
        S = strat(SQUARE)
        total = 0
        for j in (1, 2, 3):
            for G in pair_geometries(S, j):
                self.assertTrue(verify_decomposition(G))
                self.assertEqual(G.half_space_dim, 0)
                total += 1
        self.assertEqual(total, 16)

    def test_random_cones(self):
        rng = random.Random(9)
        for _ in range(6):
            S = random_strat(rng, rng.choice([3, 4]))
            for j in range(1, S.d + 1):
                geometries = pair_geometries(S, j)
                self.assertTrue(all(verify_decomposition(G) for G in geometries))
                self.assertTrue(check_embedding_injective(S, j, geometries))
            self.assertTrue(tangent_fibre_check(S))

    def test_quadrant_n(self):
        for n in (2, 3, 4):
            S = strat([[int(i == k) for i in range(n)] for k in range(n)])
            for j in range(1, S.d + 1):
                for G in pair_geometries(S, j):
                    self.assertTrue(verify_decomposition(G))
                    self.assertEqual(G.half_space_dim, 0)

    def test_ray_degeneracy(self):
        S = strat(SQUARE)
        top, zero = S.strata[0][0], S.strata[3][0]
        with self.assertRaises(RayDegeneracyError):
            pair_geometry(top, zero, S)

    def test_relative_dual(self):
        S = strat(SQUARE)
        rel = relative_dual(S.strata[1][0])
        self.assertEqual(rel.cone.ambient_dim, 2)
        self.assertEqual(len(rel.cone.generators), 2)
        with self.assertRaises(ZeroVectorError):
            relative_dual(S.strata[3][0])

class StrataTestSmoothness(unittest.TestCase):
    """Local smoothness and the dimension formula"""

    def test_polyhedral_fixtures(self):
        for gens in ([[1]], [[1, 0], [0, 1]], QUADRANT3, SQUARE):
            S = strat(gens)
            verdict = is_locally_smooth(S.dual, S)
            self.assertTrue(verdict.locally_smooth)
            self.assertEqual(verdict.witnesses, [])

    def test_lorentz(self):
        verdict = lorentz_smoothness(stratify_lorentz(LorentzCone(3), samples=32))
        self.assertTrue(verdict.locally_smooth)
        self.assertEqual(verdict.witnesses, [])
        self.assertEqual(verdict.checked, 32)

    def test_dimension_formula_square(self):
        rows = dimension_formula_rows(strat(SQUARE))
        self.assertEqual([r.containment_value for r in rows], [0, 0, 0])
        self.assertTrue(all(r.observed_matches for r in rows))
        self.assertEqual(rows[0].shifted_index_value, -2)
        self.assertIsNone(rows[2].shifted_index_value)
        self.assertFalse(rows[0].values_agree)

class StrataTestLorentz(unittest.TestCase):
    """Closed forms on the Lorentz cone"""

    def test_closed_form(self):
        G = lorentz_pair_geometry([1.0, 0.0], 3, 1)
        self.assertTrue(np.allclose(G.e_vector_unit, np.array([1.0, -1.0, 0.0]) / np.sqrt(2)))
        self.assertEqual(G.half_space_dim, 1)
        self.assertTrue(np.allclose(np.abs(G.half_space_basis[:, 0]), [0.0, 0.0, 1.0]))
        ok, residual = verify_float_decomposition(G)
        self.assertTrue(ok)
        self.assertLessEqual(residual, 1e-12)

    def test_sampled_rays(self):
        for n, dim in ((3, 1), (4, 2)):
            LS = stratify_lorentz(LorentzCone(n), samples=720)
            geometries = lorentz_geometries(LS)
            self.assertEqual(len(geometries), 2 * 720)
            for G in geometries:
                ok, residual = verify_float_decomposition(G)
                self.assertTrue(ok)
                self.assertLessEqual(residual, 1e-12)
                self.assertEqual(G.half_space_dim, dim if G.j == 1 else 0)

    def test_dimension_formula(self):
        LS = stratify_lorentz(LorentzCone(3), samples=8)
        rows = dimension_formula_rows(LS, {1: [1] * 8, 2: [0] * 8})
        self.assertEqual([r.containment_value for r in rows], [1, 0])
        self.assertTrue(all(r.observed_matches for r in rows))

    def test_tangent_probe(self):
        self.assertLess(lorentz_tangent_probe(3, samples=32), 1e-3)
        self.assertLess(lorentz_tangent_probe(4, samples=32), 1e-3)
        with self.assertRaises(StratumIndexError):
            lorentz_tangent_probe(2)

    def test_errors(self):
        with self.assertRaises(ZeroVectorError):
            lorentz_pair_geometry([0.0, 0.0], 3, 1)
        with self.assertRaises(StratumIndexError):
            lorentz_pair_geometry([1.0, 0.0], 3, 3)

if __name__ == '__main__':
    unittest.main()
