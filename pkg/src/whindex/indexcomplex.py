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

# Augmented cellular chain complex of a polytope section of a polyhedral cone
#
# Degree j of the complex is the free abelian group on the stratum P_j. A face
# F ∈ P_j of Ω* corresponds to the dual face F̌ = Ω ∩ F⊥, a j-dimensional
# face of Ω, which cuts the section {x : <c, x> = 1} in a (j-1)-cell. P_0 is
# the augmentation degree and D_1 sends every vertex to 1.

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional
import logging
import random

import numpy as np

from .errors import (BoundaryConditionError, InfiniteStratumError,
                     NonConsecutiveDimsError)
from .polycone import Face, dual_face
from .ratlin import (RationalMatrix, RationalVector, determinant, dot, nullspace,
                     scale, smith_normal_form, solve_in_basis, sub)
from .strata import LorentzStratification, Stratification

logger = logging.getLogger(__name__)

# @param ranks: |P_j| for j = 0..d
# @param parities: (n - n_{d-j}) mod 2, the degree of K_c of the Σ_j fibre
# @param boundaries: boundaries[j - 1] is D_j : C_j -> C_{j-1}, as rows of ints
# @param cells: keys of the faces of Ω* indexing each degree, in basis order
@dataclass(frozen=True)
class ChainComplex:
    ranks: tuple[int, ...]
    parities: tuple[int, ...]
    boundaries: tuple[tuple[tuple[int, ...], ...], ...]
    cells: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def d(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, j: int) -> np.ndarray:
        assert 1 <= j <= self.d, f"Sanity check: no boundary map D_{j}"
        return np.array(self.boundaries[j - 1], dtype=np.int64).reshape(self.ranks[j - 1], self.ranks[j])

@dataclass(frozen=True)
class HomologyReport:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    exact: bool

# Linear directions of the cell G ∩ {<c, x> = 1}
def _cell_basis(G: Face, c: RationalVector) -> RationalMatrix:
    W = G.span_basis
    coeffs = nullspace(RationalMatrix.from_rows([W.transpose().apply(c)], W.cols))
    return W @ coeffs

def _section_point(G: Face, c: RationalVector) -> RationalVector:
    return scale(Fraction(1) / dot(c, G.relint_point), G.relint_point)

# Incidence of G' in G: sign of det of [outward vector, basis of G'] in the basis of G
def _incidence(G: Face, Gp: Face, c: RationalVector, bases: dict) -> int:
    out = sub(_section_point(Gp, c), _section_point(G, c))
    T = RationalMatrix.from_columns([out] + bases[Gp.key].columns(), len(c))
    det = determinant(solve_in_basis(bases[G.key], T))
    ## Sanity check: both orderings span the same cell
    assert det != 0, f"Sanity check: degenerate incidence between {G} and {Gp}"
    return 1 if det > 0 else -1

# Builds the augmented cellular complex of the section of Ω
# @param seed: when given, cells are shuffled in every degree and cell
#              orientations flipped at random
def build_cellular_complex(S: Stratification, seed: Optional[int] = None) -> ChainComplex:
    n = S.ambient_dim
    if tuple(S.dims) != tuple(range(n + 1)):
        raise NonConsecutiveDimsError(f"face dimensions {list(S.dims)} are not 0..{n}")
    d = S.d
    # Ω* is solid and pointed, so the sum of its generators is an interior point
    c = tuple(sum((g[i] for g in S.dual.generators), Fraction(0)) for i in range(n))

    # cells[j] are the faces of Ω dual to P_j
    cells = [[dual_face(F, S.dual) for F in S.strata[j]] for j in range(d + 1)]
    keys = [[F.key for F in S.strata[j]] for j in range(d + 1)]
    orient = [[1] * len(cells[j]) for j in range(d + 1)]
    if seed is not None:
        rng = random.Random(seed)
        for j in range(d + 1):
            perm = list(range(len(cells[j])))
            rng.shuffle(perm)
            cells[j] = [cells[j][p] for p in perm]
            keys[j] = [keys[j][p] for p in perm]
            if j >= 2:
                orient[j] = [rng.choice((1, -1)) for _ in cells[j]]

    bases = {G.key: _cell_basis(G, c) for cs in cells for G in cs}
    boundaries = []
    for j in range(1, d + 1):
        if j == 1:
            D = [[1] * len(cells[1])]
        else:
            D = [[0] * len(cells[j]) for _ in cells[j - 1]]
            for b, G in enumerate(cells[j]):
                for a, Gp in enumerate(cells[j - 1]):
                    if Gp.is_subface_of(G):
                        D[a][b] = _incidence(G, Gp, c, bases) * orient[j][b] * orient[j - 1][a]
        boundaries.append(tuple(tuple(r) for r in D))

    ranks = tuple(len(p) for p in S.strata)
    parities = tuple((n - S.stratum_dim(j)) % 2 for j in range(d + 1))
    logger.debug("cellular complex with ranks %s", ranks)
    return ChainComplex(ranks, parities, tuple(boundaries), tuple(tuple(k) for k in keys))

def verify_boundary_squared(C: ChainComplex) -> bool:
    for j in range(2, C.d + 1):
        if np.any(C.boundary(j - 1) @ C.boundary(j)):
            return False
    return True

def _rank_and_torsion(D: np.ndarray) -> tuple[int, tuple[int, ...]]:
    if D.size == 0:
        return 0, ()
    snf = smith_normal_form(D.tolist())
    return snf.rank, tuple(f for f in snf.invariant_factors if f > 1)

# Homology of the complex: betti_j = |P_j| - rank D_j - rank D_{j+1},
# torsion from the invariant factors of D_{j+1}
def homology(C: ChainComplex) -> HomologyReport:
    if not verify_boundary_squared(C):
        raise BoundaryConditionError("boundary maps do not square to zero")
    d = C.d
    ranks, torsion = [0] * (d + 2), [()] * (d + 2)
    for j in range(1, d + 1):
        ranks[j], torsion[j] = _rank_and_torsion(C.boundary(j))
    betti = tuple(C.ranks[j] - ranks[j] - ranks[j + 1] for j in range(d + 1))
    tors = tuple(torsion[j + 1] for j in range(d + 1))
    exact = all(b == 0 for b in betti) and all(not t for t in tors)
    if not exact:
        logger.warning("augmented complex is not exact: betti %s, torsion %s", betti, tors)
    return HomologyReport(betti, tors, exact)

def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** j * r for j, r in enumerate(C.ranks))

@dataclass(frozen=True)
class ParityRow:
    j: int
    rank: int
    fibre_dim: int
    degree: int

@dataclass(frozen=True)
class KParityTable:
    rows: tuple[ParityRow, ...]
    # degrees alternate wherever fibre dims are consecutive
    alternates: bool

# K_c of R^k is Z in degree k mod 2 and 0 in the other degree
def k_parity_table(S) -> KParityTable:
    if isinstance(S, LorentzStratification):
        raise InfiniteStratumError("the Lorentz stratum P_1 is a continuum")
    n = S.ambient_dim
    rows = tuple(ParityRow(j, len(S.strata[j]), n - S.stratum_dim(j), (n - S.stratum_dim(j)) % 2)
                 for j in range(S.d + 1))
    alternates = all(b.degree != a.degree for a, b in zip(rows, rows[1:])
                     if b.fibre_dim - a.fibre_dim == 1)
    return KParityTable(rows, alternates)
