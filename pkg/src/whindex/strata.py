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

# Stratification data of a cone and the geometry of its incidence spaces
#
# For a pointed solid cone Ω with dual Ω*, the face dimensions of Ω* are
# n_0 = 0 < n_1 < ... < n_d = n, and P_j is the set of faces of Ω* of
# dimension n_{d-j}. The incidence space of stratum j pairs E ∈ P_{j-1}
# with the faces F ∈ P_j it contains. For each pair, e_F(E) spans the
# relative dual face F⊥ ∩ E^⊛ and
#
#     F⊥ = E⊥ ⊕ E_{1/2}(F) ⊕ R·e_F,   E_{1/2}(F) = F⊥ ∩ span E ∩ e_F⊥.

from dataclasses import dataclass, field
from typing import Optional, Sequence
import logging

import numpy as np
from scipy.linalg import null_space
from tqdm import tqdm

from .curvedcones import LorentzCone, unit_sphere_samples
from .errors import (DimensionMismatchError, FaceNotInLatticeError,
                     NotPointedError, NotSolidError, RayDegeneracyError,
                     StratumIndexError, ZeroVectorError)
from .polycone import (Cone, Face, FaceLattice, as_float, double_description,
                       dual_cone, dual_face, extreme_rays, face_lattice,
                       is_exposed, make_face)
from .ratlin import (RationalMatrix, RationalVector, dot, nullspace,
                     orthogonal_complement, primitive, rank, same_span)

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class Stratification:
    cone: Cone
    dual: Cone
    lattice: FaceLattice
    ambient_dim: int
    # n_0 < n_1 < ... < n_d
    dims: tuple[int, ...]
    # strata[j] = P_j, faces of the dual of dimension n_{d-j}
    strata: tuple[tuple[Face, ...], ...]
    facially_compact: bool = True

    @property
    def d(self) -> int:
        return len(self.dims) - 1

    def stratum_dim(self, j: int) -> int:
        return self.dims[self.d - j]

    def sizes(self) -> list[int]:
        return [len(p) for p in self.strata]

def stratify(omega: Cone) -> Stratification:
    if not omega.pointed:
        raise NotPointedError(f"{omega} is not pointed")
    if not omega.solid:
        raise NotSolidError(f"{omega} is not solid")
    dual = dual_cone(omega)
    lattice = face_lattice(dual)
    dims = lattice.dims_present
    d = len(dims) - 1
    strata = tuple(tuple(sorted(lattice.faces_of_dim(dims[d - j]), key=lambda f: f.key))
                   for j in range(d + 1))

    ## Sanity check: the strata partition the faces and run from Ω* down to {0}
    assert dims[0] == 0 and dims[-1] == omega.ambient_dim, f"Sanity check: face dims {dims}"
    assert sum(len(p) for p in strata) == len(lattice.faces), "Sanity check: strata do not partition the faces"
    assert len(strata[0]) == 1 and len(strata[d]) == 1, "Sanity check: extreme strata must be singletons"

    logger.info("stratified %s: dims %s, |P_j| = %s", omega, dims, [len(p) for p in strata])
    return Stratification(omega, dual, lattice, omega.ambient_dim, dims, strata)

def _check_stratum(S: Stratification, j: int, low: int = 0):
    if not low <= j <= S.d:
        raise StratumIndexError(f"stratum index {j} outside {low}..{S.d}")


## Sigma bundle ##

# Fibre F⊥ of Σ_j at a face F
@dataclass(frozen=True)
class SigmaFiber:
    face: Face
    basis: RationalMatrix

    @property
    def dim(self) -> int:
        return self.basis.cols

def sigma_fiber(F: Face) -> SigmaFiber:
    return SigmaFiber(F, orthogonal_complement(F.span_basis))

def sigma_fibres(S: Stratification, j: int) -> list[SigmaFiber]:
    _check_stratum(S, j)
    return [sigma_fiber(F) for F in S.strata[j]]


## Incidence spaces ##

@dataclass(frozen=True)
class IncidenceSpace:
    j: int
    pairs: tuple[tuple[Face, Face], ...]
    xi_image: tuple[Face, ...]
    xi_surjective: bool
    eta_surjective: bool

def incidence_space(S: Stratification, j: int) -> IncidenceSpace:
    _check_stratum(S, j, low=1)
    upper, lower = S.strata[j - 1], S.strata[j]
    pairs = tuple((E, F) for E in upper for F in lower if F.is_subface_of(E))
    xi_image = tuple(E for E in upper if any(P[0] == E for P in pairs))
    eta_image = {F.key for _, F in pairs}
    return IncidenceSpace(j, pairs, xi_image,
                          xi_surjective=len(xi_image) == len(upper),
                          eta_surjective=len(eta_image) == len(lower))

# E contains a face of the largest face dimension strictly below dim E
# {0} has no smaller face and is not modular.
def is_modular(E: Face, S: Stratification) -> bool:
    below = [n for n in S.dims if n < E.dim]
    if not below:
        return False
    m = max(below)
    return any(G.dim == m and G.is_subface_of(E) for G in S.lattice.faces)

def xi_image_is_modular(S: Stratification, j: int) -> bool:
    inc = incidence_space(S, j)
    modular = {E.key for E in S.strata[j - 1] if is_modular(E, S)}
    return {E.key for E in inc.xi_image} == modular


## Relative duals and pair geometry ##

# E^⊛ = E* ∩ span E, in coordinates of a basis W of span E
# The returned cone lives in R^{dim E}: y is in it iff W·y ∈ E^⊛.
@dataclass(frozen=True)
class RelativeDual:
    cone: Cone
    basis: RationalMatrix

def relative_dual(E: Face) -> RelativeDual:
    if E.dim == 0:
        raise ZeroVectorError("the zero face has no relative dual")
    W = E.span_basis
    Wt = W.transpose()
    cone = double_description(E.dim, inequalities=[Wt.apply(g) for g in E.generators])
    return RelativeDual(cone, W)

@dataclass(frozen=True)
class PairGeometry:
    E: Face
    F: Face
    e_vector_ray: RationalVector
    e_vector_unit: tuple[float, ...]
    half_space_basis: RationalMatrix
    E_perp_basis: RationalMatrix
    F_perp_basis: RationalMatrix

    @property
    def half_space_dim(self) -> int:
        return self.half_space_basis.cols

def _relative_dual_rays(E: Face, F: Face) -> list[RationalVector]:
    W = E.span_basis
    Wt = W.transpose()
    rays = extreme_rays([Wt.apply(g) for g in E.generators], E.dim,
                        equalities=[Wt.apply(f) for f in F.generators])
    return [primitive(W.apply(r)) for r in rays]

def pair_geometry(E: Face, F: Face, S: Stratification) -> PairGeometry:
    if S.lattice.find(E.key) != E or S.lattice.find(F.key) != F:
        raise FaceNotInLatticeError(f"({E}, {F}) is not a pair of faces of {S.dual}")
    if not (F.is_subface_of(E) and F.key != E.key):
        raise FaceNotInLatticeError(f"{F} is not a proper subface of {E}")
    n = S.ambient_dim

    rays = _relative_dual_rays(E, F)
    found = rank(RationalMatrix.from_columns(rays, n)) if rays else 0
    if found != 1:
        raise RayDegeneracyError(found)
    e = rays[0]

    E_perp = orthogonal_complement(E.span_basis)
    F_perp = orthogonal_complement(F.span_basis)
    # x ⊥ F, x ⊥ e and x ⊥ E⊥ (so x ∈ span E)
    constraints = F.span_basis.columns() + [e] + E_perp.columns()
    half = nullspace(RationalMatrix.from_rows(constraints, n))

    unit = as_float(e)
    unit = tuple(float(x) for x in unit / np.linalg.norm(unit))
    return PairGeometry(E, F, e, unit, half, E_perp, F_perp)

def pair_geometries(S: Stratification, j: int, progress: bool = False) -> list[PairGeometry]:
    pairs = incidence_space(S, j).pairs
    out = [pair_geometry(E, F, S) for E, F in tqdm(pairs, desc=f"pairs j={j}", disable=not progress)]
    logger.debug("computed %d pair geometries for j=%d", len(out), j)
    return out

# Exact check of F⊥ = E⊥ ⊕ E_{1/2}(F) ⊕ R·e_F
def verify_decomposition(G: PairGeometry) -> bool:
    n = len(G.e_vector_ray)
    pieces = [G.E_perp_basis.columns(), G.half_space_basis.columns(), [G.e_vector_ray]]
    for a in range(3):
        for b in range(a + 1, 3):
            if any(dot(u, v) != 0 for u in pieces[a] for v in pieces[b]):
                return False
    allv = [v for p in pieces for v in p]
    if any(dot(v, f) != 0 for v in allv for f in G.F.generators):
        return False
    if rank(RationalMatrix.from_columns(allv, n)) != len(allv):
        return False
    return len(allv) == G.F_perp_basis.cols

# (E, F) -> (E, e_F(E)) is injective on the pairs of stratum j
def check_embedding_injective(S: Stratification, j: int, geometries: Optional[list[PairGeometry]] = None) -> bool:
    geometries = geometries if geometries is not None else pair_geometries(S, j)
    seen = {(G.E.key, G.e_vector_ray) for G in geometries}
    return len(seen) == len(geometries)

# For j = 1: E_{1/2}(F) = F⊥ ∩ F̌⊥ and e_F spans the dual face F̌ = Ω ∩ F⊥
def tangent_fibre_check(S: Stratification, geometries: Optional[list[PairGeometry]] = None) -> bool:
    if S.d < 1:
        return True
    geometries = geometries if geometries is not None else pair_geometries(S, 1)
    n = S.ambient_dim
    for G in geometries:
        Fc = dual_face(G.F, S.dual)
        if Fc.dim != 1 or primitive(Fc.relint_point) != G.e_vector_ray:
            return False
        expected = nullspace(RationalMatrix.from_rows(G.F.span_basis.columns() + Fc.span_basis.columns(), n))
        if not same_span(expected, G.half_space_basis):
            return False
    return True


## Local smoothness ##

@dataclass
class SmoothnessVerdict:
    locally_smooth: bool
    witnesses: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    checked: int = 0

# Every modular face E is smooth: for each maximal F ⊂ E, F⊥ ∩ E^⊛ is a
# single ray and every extreme ray of it is exposed in E^⊛.
def is_locally_smooth(dual: Cone, S: Stratification) -> SmoothnessVerdict:
    assert dual == S.dual, "Sanity check: stratification of a different cone"
    verdict = SmoothnessVerdict(True)
    for E in S.lattice.faces:
        if not is_modular(E, S):
            continue
        m = max(n for n in S.dims if n < E.dim)
        rel = relative_dual(E)
        Wt = rel.basis.transpose()
        for F in (G for G in S.lattice.faces if G.dim == m and G.is_subface_of(E)):
            verdict.checked += 1
            normals = [Wt.apply(f) for f in F.generators]
            key = [i for i, y in enumerate(rel.cone.generators) if all(dot(a, y) == 0 for a in normals)]
            R = make_face(rel.cone, key)
            smooth = R.dim == 1 and all(is_exposed(make_face(rel.cone, [i]), rel.cone) for i in R.key)
            if not smooth:
                logger.warning("face %s is not smooth along %s", E, F)
                verdict.locally_smooth = False
                verdict.witnesses.append((E.key, F.key))
    return verdict


## Dimension bookkeeping ##

@dataclass
class DimensionFormulaRow:
    j: int
    containment_value: int
    shifted_index_value: Optional[int]
    observed: list[int]

    @property
    def values_agree(self) -> bool:
        return self.shifted_index_value == self.containment_value

    @property
    def observed_matches(self) -> bool:
        return all(o == self.containment_value for o in self.observed)

# Per stratum: dim E_{1/2}(F) from containment, n_{d-j+1} - n_{d-j} - 1,
# against the shifted-index value n_{d-j-1} - n_{d-j} - 1
# @param S: a Stratification or LorentzStratification
# @param observed: E_{1/2} dimensions seen per stratum; computed from all
#                  pair geometries when omitted (polyhedral only)
def dimension_formula_rows(S, observed: Optional[dict[int, list[int]]] = None) -> list[DimensionFormulaRow]:
    dims = S.dims
    d = len(dims) - 1
    if observed is None:
        observed = {j: [G.half_space_dim for G in pair_geometries(S, j)] for j in range(1, d + 1)}
    rows = []
    for j in range(1, d + 1):
        containment = dims[d - j + 1] - dims[d - j] - 1
        shifted = dims[d - j - 1] - dims[d - j] - 1 if d - j - 1 >= 0 else None
        rows.append(DimensionFormulaRow(j, containment, shifted, sorted(set(observed.get(j, [])))))
    return rows


## Lorentz closed forms ##

@dataclass(frozen=True, eq=False)
class LorentzStratification:
    cone: LorentzCone
    # unit vectors ω ∈ S^{n-2}; P_1 is the continuum of rays through (1, ω)
    omegas: np.ndarray
    facially_compact: bool = True

    @property
    def ambient_dim(self) -> int:
        return self.cone.ambient_dim

    @property
    def dims(self) -> tuple[int, ...]:
        return (0, 1, self.cone.ambient_dim)

    # None marks a continuum
    def sizes(self) -> list[Optional[int]]:
        return [1, None, 1]

def stratify_lorentz(L: LorentzCone, samples: int = 720) -> LorentzStratification:
    return LorentzStratification(L, unit_sphere_samples(L.ambient_dim - 1, samples))

# Every nonzero face of the Lorentz cone contains a face of the next lower
# dimension in {0, 1, n}
def lorentz_is_modular(face_dim: int, LS: LorentzStratification) -> bool:
    return face_dim in LS.dims and face_dim > 0

# The Lorentz cone is self-dual and all its proper nonzero faces are exposed
# extreme rays, so every modular face is smooth. One instance per sampled ray.
def lorentz_smoothness(LS: LorentzStratification) -> SmoothnessVerdict:
    return SmoothnessVerdict(True, [], checked=len(LS.omegas))

@dataclass(frozen=True, eq=False)
class FloatPairGeometry:
    j: int
    omega: np.ndarray
    F_basis: np.ndarray
    e_vector_unit: np.ndarray
    half_space_basis: np.ndarray
    E_perp_basis: np.ndarray
    F_perp_basis: np.ndarray

    @property
    def half_space_dim(self) -> int:
        return self.half_space_basis.shape[1]

# Closed forms on the Lorentz cone (self-dual, so Ω* = Ω):
#   j = 1: E = Ω*, F = ray(1, ω):  e_F = (1, -ω)/√2,  E_{1/2} = {(0, w) : w ⊥ ω}
#   j = 2: E = ray(1, ω), F = {0}: e_F = (1, ω)/√2,   E_{1/2} = {0}
def lorentz_pair_geometry(omega: Sequence[float], n: int, j: int) -> FloatPairGeometry:
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (n - 1,):
        raise DimensionMismatchError(f"ω must be a vector in R^{n - 1}")
    if np.linalg.norm(omega) == 0:
        raise ZeroVectorError("ω must be nonzero")
    omega = omega / np.linalg.norm(omega)
    r = np.concatenate([[1.0], omega])
    if j == 1:
        F_basis = r[:, None] / np.linalg.norm(r)
        e = np.concatenate([[1.0], -omega]) / np.sqrt(2)
        w = null_space(omega[None, :]) if n > 2 else np.zeros((1, 0))
        half = np.vstack([np.zeros((1, w.shape[1])), w])
        E_perp = np.zeros((n, 0))
        F_perp = null_space(r[None, :])
    elif j == 2:
        F_basis = np.zeros((n, 0))
        e = r / np.sqrt(2)
        half = np.zeros((n, 0))
        E_perp = null_space(r[None, :])
        F_perp = np.eye(n)
    else:
        raise StratumIndexError(f"stratum index {j} outside 1..2")
    return FloatPairGeometry(j, omega, F_basis, e, half, E_perp, F_perp)

# Floating-point version of verify_decomposition
# Returns the verdict and the largest orthogonality/containment residual.
def verify_float_decomposition(G: FloatPairGeometry, tol: float = 1e-12) -> tuple[bool, float]:
    e = G.e_vector_unit[:, None]
    pieces = [G.E_perp_basis, G.half_space_basis, e]
    residual = 0.0
    for a in range(3):
        for b in range(a + 1, 3):
            if pieces[a].size and pieces[b].size:
                residual = max(residual, float(np.max(np.abs(pieces[a].T @ pieces[b]))))
    allv = np.hstack(pieces)
    if G.F_basis.size:
        residual = max(residual, float(np.max(np.abs(G.F_basis.T @ allv))))
    count = allv.shape[1]
    independent = np.linalg.matrix_rank(allv) == count
    return bool(residual <= tol and independent and count == G.F_perp_basis.shape[1]), residual

# Largest component outside E_{1/2}(F) of the difference quotient
# (e_{F'} - e_F)/ε, where F' is F rotated by ε along the sphere. The fibre's
# tangent space is E_{1/2}(F), so this is O(ε).
def lorentz_tangent_probe(n: int, samples: int = 64, eps: float = 1e-4) -> float:
    if n < 3:
        raise StratumIndexError("the rays of the Lorentz cone in R^2 form a discrete set")
    worst = 0.0
    for omega in unit_sphere_samples(n - 1, samples):
        G = lorentz_pair_geometry(omega, n, 1)
        tangent = G.half_space_basis[1:, 0]
        moved = omega + eps * tangent
        moved /= np.linalg.norm(moved)
        G2 = lorentz_pair_geometry(moved, n, 1)
        q = (G2.e_vector_unit - G.e_vector_unit) / eps
        H = G.half_space_basis
        worst = max(worst, float(np.linalg.norm(q - H @ (H.T @ q))))
    return worst

def lorentz_geometries(LS: LorentzStratification, progress: bool = False) -> list[FloatPairGeometry]:
    n = LS.ambient_dim
    out = []
    for omega in tqdm(LS.omegas, desc="lorentz rays", disable=not progress):
        out.append(lorentz_pair_geometry(omega, n, 1))
        out.append(lorentz_pair_geometry(omega, n, 2))
    return out
