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

# Polyhedral cone kernel: dual V/H representations, double description,
# face lattices, dual faces, exposure and projection onto a cone.
#
# A cone is kept as a pair of representations:
#   generators:   C = cone(g_1, ..., g_k)
#   inequalities: C = {x : <a, x> >= 0 for every a}
# Both lists are canonical: primitive integer vectors, sorted, and made of the
# extreme rays of the pointed part followed by +/- a basis of the lineality
# space. Swapping the two lists therefore yields the dual cone.

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence
import logging

import numpy as np

from .errors import (DimensionMismatchError, FaceNotInLatticeError, InputError,
                     NotPointedError, ZeroVectorError)
from .ratlin import (RationalMatrix, RationalVector, Scalar, column_basis, dot,
                     independent_columns, inverse, is_zero, nullspace, primitive,
                     rank, sub, vector)

logger = logging.getLogger(__name__)

# Closed convex polyhedral cone in R^n
# @param ambient_dim: n
# @param generators: V-representation (extreme rays, then +/- lineality basis)
# @param inequalities: H-representation, <a, x> >= 0 for every a
# @param pointed: the lineality space is {0}
# @param solid: the generators span R^n
@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    generators: tuple[RationalVector, ...]
    inequalities: tuple[RationalVector, ...]
    pointed: bool
    solid: bool
    name: str = ""

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(dot(a, x) >= 0 for a in self.inequalities)

    def generator_matrix(self) -> RationalMatrix:
        return RationalMatrix.from_columns(self.generators, self.ambient_dim)

    def inequality_matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.inequalities, self.ambient_dim)

    def __str__(self) -> str:
        label = self.name or "cone"
        return f"{label}(n={self.ambient_dim}, rays={len(self.generators)}, facets={len(self.inequalities)})"

# Face of a cone, keyed by the indices of the generators it contains
# @param key: sorted generator indices
# @param generators: the generators themselves
# @param span_basis: independent columns spanning the face
# @param relint_point: sum of the face generators (a relative interior point)
@dataclass(frozen=True)
class Face:
    key: tuple[int, ...]
    generators: tuple[RationalVector, ...]
    span_basis: RationalMatrix
    dim: int
    relint_point: RationalVector

    def is_subface_of(self, other: "Face") -> bool:
        return set(self.key) <= set(other.key)

    def __str__(self) -> str:
        return f"face{list(self.key)}(dim={self.dim})"

@dataclass(frozen=True)
class FaceLattice:
    cone: Cone
    faces: tuple[Face, ...]
    # (child, parent) index pairs into faces, parent covers child
    covering: tuple[tuple[int, int], ...]
    dims_present: tuple[int, ...]

    def faces_of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def find(self, key: Sequence[int]) -> Optional[Face]:
        key = tuple(sorted(key))
        return next((f for f in self.faces if f.key == key), None)

    @property
    def bottom(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]


## Double description ##

# Extreme rays of the pointed cone {x : <v, x> >= 0, <b, x> = 0}
# Works in coordinates of a basis W of the equality subspace and inserts the
# inequalities one at a time. Two rays on opposite sides of the new hyperplane
# are combined iff they are adjacent, i.e. the rows vanishing on both have
# rank k - 2.
# @param vectors: inequality normals v
# @param n: ambient dimension
# @param equalities: normals b of the equality constraints
def extreme_rays(vectors: Sequence[RationalVector], n: int,
                 equalities: Sequence[RationalVector] = ()) -> list[RationalVector]:
    if equalities:
        W = nullspace(RationalMatrix.from_rows(equalities, n))
    else:
        W = RationalMatrix.identity(n)
    k = W.cols
    if k == 0:
        return []
    Wt = W.transpose()
    rows: list[RationalVector] = []
    for v in vectors:
        r = primitive(Wt.apply(v))
        if not is_zero(r) and r not in rows:
            rows.append(r)

    M = RationalMatrix.from_rows(rows, k)
    start = _independent_rows(M)
    if len(start) < k:
        raise NotPointedError(f"cone has a lineality space of dimension {k - len(start)}")

    # The simplicial cone of the first k rows: its rays are the columns of the inverse
    Minv = inverse(RationalMatrix.from_rows([rows[i] for i in start], k))
    rays = []
    for j in range(k):
        zeros = frozenset(start[m] for m in range(k) if m != j)
        rays.append((primitive(Minv.column(j)), zeros))

    for i in (i for i in range(len(rows)) if i not in start):
        a = rows[i]
        vals = [dot(a, r) for r, _ in rays]
        kept = [(r, z | {i} if val == 0 else z) for (r, z), val in zip(rays, vals) if val >= 0]
        pos = [(r, z, val) for (r, z), val in zip(rays, vals) if val > 0]
        neg = [(r, z, val) for (r, z), val in zip(rays, vals) if val < 0]
        for rp, zp, vp in pos:
            for rq, zq, vq in neg:
                common = zp & zq
                if len(common) < k - 2:
                    continue
                if _rows_rank(rows, common, k) != k - 2:
                    continue
                new = primitive(tuple(vp * y - vq * x for x, y in zip(rp, rq)))
                kept.append((new, common | {i}))
        rays = kept
        logger.debug("inserted constraint %d/%d: %d rays", i + 1, len(rows), len(rays))

    lifted = {primitive(W.apply(r)) for r, _ in rays}
    return sorted(lifted)

def _independent_rows(M: RationalMatrix) -> list[int]:
    if M.rows == 0:
        return []
    return independent_columns(M.transpose())

def _rows_rank(rows: list[RationalVector], idx: frozenset, k: int) -> int:
    if not idx:
        return 0
    return rank(RationalMatrix.from_rows([rows[i] for i in sorted(idx)], k))

# Minimal description of {x : <v, x> >= 0 for all v}
# Returns the extreme rays of its pointed part and a basis of its lineality space.
def _minimal_generators(vectors: Sequence[RationalVector], n: int) -> tuple[list[RationalVector], list[RationalVector]]:
    lineality = nullspace(RationalMatrix.from_rows(vectors, n)).columns()
    lineality = [primitive(l) for l in lineality]
    rays = extreme_rays(vectors, n, equalities=lineality)
    return rays, lineality

def _with_lineality(rays: list[RationalVector], lineality: list[RationalVector]) -> tuple[RationalVector, ...]:
    lines = []
    for l in lineality:
        lines.append(l)
        lines.append(tuple(-x for x in l))
    return tuple(sorted(rays)) + tuple(lines)

# Builds both representations of a cone from either one
# @param ambient_dim: n >= 1
# @param generators: V-representation, or None
# @param inequalities: H-representation, or None
def double_description(ambient_dim: int,
                       generators: Optional[Sequence[Sequence[Scalar]]] = None,
                       inequalities: Optional[Sequence[Sequence[Scalar]]] = None,
                       name: str = "") -> Cone:
    if ambient_dim < 1:
        raise DimensionMismatchError("ambient dimension must be at least 1")
    if (generators is None) == (inequalities is None):
        raise InputError("exactly one of generators and inequalities must be given")
    given = generators if generators is not None else inequalities
    if len(given) == 0:
        raise InputError("a cone needs at least one vector")
    vecs = [vector(v) for v in given]
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if is_zero(v):
            raise ZeroVectorError("zero vector in cone description")
    n = ambient_dim

    if generators is not None:
        # Inequalities are the generators of the dual
        ineq_rays, ineq_lin = _minimal_generators(vecs, n)
        ineqs = _with_lineality(ineq_rays, ineq_lin)
        gen_rays, gen_lin = _minimal_generators(ineqs, n)
        gens = _with_lineality(gen_rays, gen_lin)
        ## Sanity check: every input generator satisfies every inequality
        assert all(dot(a, g) >= 0 for a in ineqs for g in vecs), \
            "Sanity check: input generator violates a computed inequality"
    else:
        gen_rays, gen_lin = _minimal_generators(vecs, n)
        gens = _with_lineality(gen_rays, gen_lin)
        ineq_rays, ineq_lin = _minimal_generators(gens, n)
        ineqs = _with_lineality(ineq_rays, ineq_lin)
        ## Sanity check: every computed generator satisfies every input inequality
        assert all(dot(a, g) >= 0 for a in vecs for g in gens), \
            "Sanity check: computed generator violates an input inequality"

    ## Sanity check: cross-validate the two representations
    assert all(dot(a, g) >= 0 for a in ineqs for g in gens), \
        "Sanity check: V- and H-representations disagree"

    cone = Cone(n, gens, ineqs, pointed=len(gen_lin) == 0, solid=len(ineq_lin) == 0, name=name)
    logger.debug("double description: %s", cone)
    return cone

# The dual cone {y : <y, x> >= 0 for all x in C}
def dual_cone(C: Cone) -> Cone:
    name = f"{C.name}*" if C.name else ""
    return Cone(C.ambient_dim, C.inequalities, C.generators, pointed=C.solid, solid=C.pointed, name=name)

def lineality_basis(C: Cone) -> RationalMatrix:
    return nullspace(RationalMatrix.from_rows(C.inequalities, C.ambient_dim))

def same_cone(A: Cone, B: Cone) -> bool:
    return A.ambient_dim == B.ambient_dim and \
        all(B.contains(g) for g in A.generators) and all(A.contains(g) for g in B.generators)


## Faces ##

def _build_face(C: Cone, key: Sequence[int]) -> Face:
    key = tuple(sorted(key))
    gens = tuple(C.generators[i] for i in key)
    n = C.ambient_dim
    span = column_basis(RationalMatrix.from_columns(gens, n)) if gens else RationalMatrix.zeros(n, 0)
    relint = tuple(sum((g[c] for g in gens), Fraction(0)) for c in range(n))
    return Face(key, gens, span, span.cols, relint)

def _closure(C: Cone, key: Sequence[int]) -> tuple[int, ...]:
    active = [a for a in C.inequalities if all(dot(a, C.generators[i]) == 0 for i in key)]
    return tuple(j for j, g in enumerate(C.generators) if all(dot(a, g) == 0 for a in active))

# The face of C generated by the generators with the given indices
# Raises FaceNotInLatticeError when those generators do not form a face.
def make_face(C: Cone, key: Sequence[int]) -> Face:
    key = tuple(sorted(set(key)))
    if any(i < 0 or i >= len(C.generators) for i in key):
        raise FaceNotInLatticeError(f"generator index out of range in {list(key)}")
    if _closure(C, key) != key:
        raise FaceNotInLatticeError(f"generators {list(key)} do not form a face")
    return _build_face(C, key)

# All faces of a pointed cone, graded by dimension
@lru_cache(maxsize=128)
def face_lattice(C: Cone) -> FaceLattice:
    if not C.pointed:
        raise NotPointedError(f"face lattice of a cone with lineality: {C}")
    zero_sets = [frozenset(i for i, g in enumerate(C.generators) if dot(a, g) == 0)
                 for a in C.inequalities]
    top = frozenset(range(len(C.generators)))
    seen = {top, frozenset()}
    queue = [top]
    # Faces are exactly the intersections of facet zero sets
    while queue:
        k = queue.pop()
        for z in zero_sets:
            s = k & z
            if s not in seen:
                seen.add(s)
                queue.append(s)

    faces = sorted((_build_face(C, s) for s in seen), key=lambda f: (f.dim, f.key))
    keys = [set(f.key) for f in faces]
    covering = []
    for c, child in enumerate(keys):
        above = [p for p, parent in enumerate(keys) if child < parent]
        for p in above:
            if not any(keys[q] < keys[p] and child < keys[q] for q in above):
                covering.append((c, p))
    dims = tuple(sorted({f.dim for f in faces}))
    logger.debug("face lattice of %s: %d faces, dims %s", C, len(faces), dims)
    return FaceLattice(C, tuple(faces), tuple(covering), dims)

def _check_face(F: Face, C: Cone):
    if any(i >= len(C.generators) for i in F.key) or \
            F.generators != tuple(C.generators[i] for i in F.key) or \
            _closure(C, F.key) != F.key:
        raise FaceNotInLatticeError(f"{F} is not a face of {C}")

# The face F⊥ ∩ C* of the dual cone
def dual_face(F: Face, C: Cone) -> Face:
    _check_face(F, C)
    # A dual generator vanishes on F iff it vanishes on the relative interior point
    key = tuple(i for i, a in enumerate(C.inequalities) if dot(a, F.relint_point) == 0)
    return make_face(dual_cone(C), key)

# True iff C ∩ y⊥ = F for y the relative interior point of the dual face
def is_exposed(F: Face, C: Cone) -> bool:
    y = dual_face(F, C).relint_point
    exposed = tuple(i for i, g in enumerate(C.generators) if dot(y, g) == 0)
    return exposed == F.key


## Projection ##

# Orthogonal projection onto the column span of an independent basis B
def project_onto_span(x: Sequence[Fraction], B: RationalMatrix) -> RationalVector:
    if B.cols == 0:
        return tuple(Fraction(0) for _ in x)
    Bt = B.transpose()
    coeffs = inverse(Bt @ B).apply(Bt.apply(x))
    return B.apply(coeffs)

# Moreau conditions: p ∈ C, x - p in the polar of C, <p, x - p> = 0
def moreau_holds(x: Sequence[Fraction], p: Sequence[Fraction], C: Cone) -> bool:
    r = sub(x, p)
    return C.contains(p) and all(dot(r, g) <= 0 for g in C.generators) and dot(p, r) == 0

# Exact metric projection onto a pointed cone by exhaustive face search
# The projection is the projection onto the span of the unique face whose
# span projection is feasible for the Moreau conditions.
def project_onto_cone(x: Sequence[Scalar], C: Cone) -> RationalVector:
    x = vector(x)
    if len(x) != C.ambient_dim:
        raise DimensionMismatchError(f"vector of length {len(x)} in ambient dimension {C.ambient_dim}")
    if C.contains(x):
        return x
    for F in face_lattice(C).faces:
        p = project_onto_span(x, F.span_basis)
        if moreau_holds(x, p, C):
            return p
    raise AssertionError(f"Sanity check: no face of {C} satisfies the Moreau conditions for {x}")


## Floating-point projection ##

def _orthonormal(M: RationalMatrix) -> np.ndarray:
    if M.cols == 0:
        return np.zeros((M.rows, 0))
    A = np.array([[float(M[i, j]) for j in range(M.cols)] for i in range(M.rows)])
    Q, _ = np.linalg.qr(A)
    return Q

# Floating-point projection onto a polyhedral cone
# The cone splits as L ⊕ P with L its lineality space and P pointed, so
# proj_C(x) = proj_L(x) + proj_P(x - proj_L(x)). Projection onto P tries the
# span of every face of P and keeps the closest feasible candidate.
class ConeProjector:
    def __init__(self, C: Cone, tol: float = 1e-9):
        self.cone = C
        self.tol = tol
        n = C.ambient_dim
        lin = lineality_basis(C)
        self.Q_lin = _orthonormal(lin)
        rays = [g for g in C.generators if lin.cols == 0 or rank(lin.hstack(RationalMatrix.from_columns([g], n))) > lin.cols]
        self.face_bases: list[np.ndarray] = []
        if rays:
            P = double_description(n, generators=rays)
            self.A = np.array([[float(a) for a in ineq] for ineq in P.inequalities]).reshape(-1, n)
            self.face_bases = [_orthonormal(F.span_basis) for F in face_lattice(P).faces if F.dim > 0]
        else:
            self.A = np.zeros((0, n))

    def project_many(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        XL = X @ self.Q_lin @ self.Q_lin.T
        Y = X - XL
        best = np.zeros_like(Y)
        best_dist = np.linalg.norm(Y, axis=1)
        slack = self.tol * np.maximum(1.0, np.linalg.norm(X, axis=1))
        for Q in self.face_bases:
            cand = Y @ Q @ Q.T
            feasible = np.all(cand @ self.A.T >= -slack[:, None], axis=1)
            dist = np.where(feasible, np.linalg.norm(Y - cand, axis=1), np.inf)
            better = dist < best_dist
            best[better] = cand[better]
            best_dist[better] = dist[better]
        return XL + best

    def project(self, x: Sequence[float]) -> np.ndarray:
        return self.project_many(np.asarray(x, dtype=float)[None, :])[0]

    def distance_many(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.linalg.norm(X - self.project_many(X), axis=1)

@lru_cache(maxsize=256)
def cone_projector(C: Cone) -> ConeProjector:
    return ConeProjector(C)

def as_float(v: Sequence[Fraction]) -> np.ndarray:
    return np.array([float(a) for a in v])
