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

# One-dimensional anchor: winding numbers of Laurent polynomial symbols and
# Fredholm indices of the associated Toeplitz operators.
#
# T[s] acts on l^2(N) by T_ij = c_{i-j}, so T[z] is the unilateral shift and
# has index -1. With this normalisation index(T[s]) = -winding(s).

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional
import logging

import numpy as np

from .errors import (InputError, NotFredholmError, SectionTooSmallError,
                     UnstableSectionError)

logger = logging.getLogger(__name__)

MIN_MODULUS = 1e-9
ROOT_MERGE = 1e-6
RANK_TOL = 1e-9

# Finitely supported Laurent polynomial s(z) = Σ c_k z^k
# @param coefficients: (degree, coefficient) pairs, sorted, nonzero
@dataclass(frozen=True)
class LaurentSymbol:
    coefficients: tuple[tuple[int, complex], ...]

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex]) -> "LaurentSymbol":
        return cls(tuple(sorted((int(k), complex(c)) for k, c in coeffs.items() if c != 0)))

    # Parses "k:c,k:c,..." where c is any Python complex literal
    @classmethod
    def parse(cls, text: str) -> "LaurentSymbol":
        coeffs: dict[int, complex] = {}
        for term in text.split(","):
            deg, sep, coef = term.strip().partition(":")
            if not sep:
                raise InputError(f"term {term!r} is not of the form degree:coefficient", "symbol")
            try:
                k, c = int(deg), complex(coef.strip().replace(" ", ""))
            except ValueError:
                raise InputError(f"cannot parse term {term!r}", "symbol") from None
            if k in coeffs:
                raise InputError(f"degree {k} given twice", "symbol")
            coeffs[k] = c
        s = cls.from_dict(coeffs)
        if not s.coefficients:
            raise InputError("the zero symbol", "symbol")
        return s

    def coeff(self, k: int) -> complex:
        return dict(self.coefficients).get(k, 0j)

    @property
    def bandwidth(self) -> int:
        return max((abs(k) for k, _ in self.coefficients), default=0)

    @property
    def lowest(self) -> int:
        return min(k for k, _ in self.coefficients)

    @property
    def highest(self) -> int:
        return max(k for k, _ in self.coefficients)

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return sum(c * z ** k for k, c in self.coefficients)

    def __mul__(self, other: "LaurentSymbol") -> "LaurentSymbol":
        out: dict[int, complex] = {}
        for (a, ca), (b, cb) in product(self.coefficients, other.coefficients):
            out[a + b] = out.get(a + b, 0j) + ca * cb
        return LaurentSymbol.from_dict(out)

    # Symbol of the adjoint operator: c'_k = conj(c_{-k})
    def adjoint(self) -> "LaurentSymbol":
        return LaurentSymbol.from_dict({-k: c.conjugate() for k, c in self.coefficients})

    def __str__(self) -> str:
        def fmt(c: complex) -> str:
            return f"{c.real:g}" if c.imag == 0 else f"{c:g}"
        return ",".join(f"{k}:{fmt(c)}" for k, c in self.coefficients)

@dataclass(frozen=True)
class WindingResult:
    winding: int
    min_modulus: float

# Winding number of s around 0 along the unit circle
# @param grid: number of points on the circle, at least 8·(bandwidth + 1)
def winding_number(s: LaurentSymbol, grid: Optional[int] = None) -> WindingResult:
    least = 8 * (s.bandwidth + 1)
    grid = grid if grid is not None else max(512, least)
    if grid < least:
        raise InputError(f"grid of {grid} points is below {least} for bandwidth {s.bandwidth}", "grid")
    z = np.exp(2j * np.pi * np.arange(grid) / grid)
    vals = s(z)
    min_mod = float(np.min(np.abs(vals)))
    if min_mod < MIN_MODULUS:
        raise NotFredholmError(f"symbol {s} vanishes on the unit circle (min modulus {min_mod:.3g})")
    total = np.sum(np.angle(np.roll(vals, -1) / vals))
    return WindingResult(int(round(total / (2 * np.pi))), min_mod)

def _toeplitz_rows(s: LaurentSymbol, rows: int, cols: int) -> np.ndarray:
    return np.array([[s.coeff(i - j) for j in range(cols)] for i in range(rows)], dtype=complex)

# Roots of the polynomial z^(-lowest)·s(z), grouped with their multiplicities
def _root_clusters(s: LaurentSymbol) -> list[tuple[complex, int]]:
    coeffs = [s.coeff(k) for k in range(s.highest, s.lowest - 1, -1)]
    clusters: list[list[complex]] = []
    for r in np.roots(coeffs):
        near = next((c for c in clusters if abs(c[0] - r) < ROOT_MERGE * max(1.0, abs(r))), None)
        if near is None:
            clusters.append([complex(r)])
        else:
            near.append(complex(r))
    return [(complex(np.mean(c)), len(c)) for c in clusters]

# Columns spanning the l^2 solutions of (T[s]x)_i = 0 on the rows not touching
# the boundary, restricted to 0..N-1:
#   e_m for the positions m < -highest that no row reads
#   m^j·λ^m for every root 1/λ of s outside the closed unit disk, j below its multiplicity
def _decaying_modes(s: LaurentSymbol, N: int) -> np.ndarray:
    cols = [np.eye(N, dtype=complex)[m] for m in range(min(max(0, -s.highest), N))]
    m = np.arange(N)
    for root, mult in _root_clusters(s):
        if abs(root) <= 1:
            continue
        lam = 1 / root
        for j in range(mult):
            v = (m ** j) * lam ** m
            cols.append(v / np.linalg.norm(v))
    return np.column_stack(cols) if cols else np.zeros((N, 0), dtype=complex)

# dim ker T[s] on l^2(N)
# Every kernel vector lies in the span of the decaying modes. The rows of the
# section whose band lies inside the first N columns (a guard band of
# -lowest rows is dropped at the bottom) cut that span down to the kernel.
def _kernel_dim(s: LaurentSymbol, N: int) -> int:
    M = _decaying_modes(s, N)
    if M.shape[1] == 0:
        return 0
    rows = N - max(0, -s.lowest)
    R = _toeplitz_rows(s, rows, N) @ M
    sv = np.linalg.svd(R, compute_uv=False)
    rank = int(np.sum(sv > RANK_TOL * max(1.0, float(sv[0])))) if len(sv) else 0
    return M.shape[1] - rank

# dim ker - dim coker, the cokernel being the kernel of the adjoint T[s]* = T[s~]
def _section_index(s: LaurentSymbol, N: int) -> int:
    return _kernel_dim(s, N) - _kernel_dim(s.adjoint(), N)

def toeplitz_index(s: LaurentSymbol, N: Optional[int] = None) -> int:
    w = winding_number(s).winding
    least = 10 * (s.bandwidth + abs(w) + 1)
    N = N if N is not None else max(50, least)
    if N < least:
        raise SectionTooSmallError(f"section size {N} is below {least} for {s}")
    index = _section_index(s, N)
    again = _section_index(s, N + s.bandwidth + 1)
    if again != index:
        logger.warning("index of %s changes from %d to %d with the section size", s, index, again)
        raise UnstableSectionError(f"index of {s} is {index} at N={N} but {again} at N={N + s.bandwidth + 1}")
    return index

@dataclass(frozen=True)
class IndexCheck:
    symbol: str
    winding: int
    index: int
    passed: bool

def index_theorem_check(s: LaurentSymbol, N: Optional[int] = None) -> IndexCheck:
    w = winding_number(s).winding
    idx = toeplitz_index(s, N)
    if idx != -w:
        logger.warning("index %d of %s does not match winding %d", idx, s, w)
    return IndexCheck(str(s), w, idx, idx == -w)

# z^k for k = -3..3, 1 + z/2 and (1 + z/2)·z^2
def classical_corpus() -> list[LaurentSymbol]:
    corpus = [LaurentSymbol.from_dict({k: 1}) for k in range(-3, 4)]
    damped = LaurentSymbol.from_dict({0: 1, 1: 0.5})
    corpus.append(damped)
    corpus.append(damped * LaurentSymbol.from_dict({2: 1}))
    return corpus

# w(s1·s2) = w(s1) + w(s2) over all ordered pairs of the given symbols
def winding_additivity(symbols: list[LaurentSymbol]) -> tuple[bool, int]:
    w = [winding_number(s).winding for s in symbols]
    checked = 0
    ok = True
    for a, b in product(range(len(symbols)), repeat=2):
        checked += 1
        if winding_number(symbols[a] * symbols[b]).winding != w[a] + w[b]:
            logger.warning("winding is not additive on %s, %s", symbols[a], symbols[b])
            ok = False
    return ok, checked
