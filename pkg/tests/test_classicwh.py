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

import unittest

from src.whindex.classicwh import *
from src.whindex.errors import InputError, NotFredholmError, SectionTooSmallError

def mono(k: int) -> LaurentSymbol:
    return LaurentSymbol.from_dict({k: 1})

class ClassicTestSymbols(unittest.TestCase):
    """Laurent symbols"""

    def test_parse(self):
        s = LaurentSymbol.parse("0:1, 1:0.5")
        self.assertEqual(s.coeff(0), 1)
        self.assertEqual(s.coeff(1), 0.5)
        self.assertEqual(s.bandwidth, 1)
        self.assertEqual(LaurentSymbol.parse("-2:1+1j").coeff(-2), 1 + 1j)
        for bad in ("1", "a:1", "1:x", "1:1,1:2", "0:0"):
            with self.assertRaises(InputError):
                LaurentSymbol.parse(bad)

    def test_product(self):
        s = LaurentSymbol.from_dict({0: 1, 1: 0.5}) * mono(2)
        self.assertEqual(s, LaurentSymbol.from_dict({2: 1, 3: 0.5}))
        self.assertEqual(mono(3).adjoint(), mono(-3))

class ClassicTestIndex(unittest.TestCase):
    """Winding numbers and Toeplitz indices"""

    def test_winding(self):
        self.assertEqual(winding_number(mono(1)).winding, 1)
        self.assertEqual(winding_number(LaurentSymbol.from_dict({0: 1, 1: 0.5})).winding, 0)
        self.assertEqual(winding_number(mono(-2)).winding, -2)

    def test_not_fredholm(self):
        with self.assertRaises(NotFredholmError):
            winding_number(LaurentSymbol.from_dict({0: 1, 1: 1}))
        with self.assertRaises(InputError):
            winding_number(mono(4), grid=8)

    def test_toeplitz_index(self):
        self.assertEqual(toeplitz_index(mono(1), 50), -1)
        self.assertEqual(toeplitz_index(mono(-3)), 3)
        self.assertEqual(toeplitz_index(LaurentSymbol.from_dict({0: 1, 1: 0.5})), 0)
        self.assertEqual(toeplitz_index(LaurentSymbol.from_dict({1: 1j})), -1)

    def test_index_with_decaying_kernel(self):
        # kernels and cokernels spanned by geometric sequences, not finite vectors
        cases = [({0: 1, 1: 2}, -1), ({-1: 1, 0: 0.5}, 1), ({0: 2, -1: 1, -2: 1}, 0),
                 ({-2: 1, -1: 2.5, 0: 1}, 1), ({0: 1, 1: 4, 2: 4}, -2), ({0: 1, 1: 1, 2: 0.25}, 0)]
        for coeffs, expected in cases:
            s = LaurentSymbol.from_dict(coeffs)
            self.assertEqual(toeplitz_index(s), expected, str(s))
            c = index_theorem_check(s)
            self.assertTrue(c.passed, str(s))
            self.assertEqual(c.winding, -expected)

    def test_index_stable_in_section_size(self):
        s = LaurentSymbol.from_dict({-1: 1, 0: 0.5})
        self.assertEqual({toeplitz_index(s, N) for N in (40, 57, 90)}, {1})

    def test_section_too_small(self):
        with self.assertRaises(SectionTooSmallError):
            toeplitz_index(mono(1), 5)

    def test_corpus(self):
        corpus = classical_corpus()
        self.assertEqual(len(corpus), 9)
        for s in corpus:
            c = index_theorem_check(s)
            self.assertTrue(c.passed)
            self.assertEqual(c.index, -c.winding)
        last = index_theorem_check(corpus[-1])
        self.assertEqual((last.winding, last.index), (2, -2))

    def test_additivity(self):
        ok, checked = winding_additivity(classical_corpus())
        self.assertTrue(ok)
        self.assertEqual(checked, 81)

if __name__ == '__main__':
    unittest.main()
