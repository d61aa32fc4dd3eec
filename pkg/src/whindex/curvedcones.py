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

# Analytic cones: Lorentz cones and Siegel cones C(K, B)
#
#   Lorentz:  L_n = {(t, x) in R x R^{n-1} : t >= |x|}
#   Siegel:   C(K, B) = {(u, v, t) in U x V x R : v in K, t >= 0, tv - B(u) in K}
#
# Everything here is floating point; checks that quantify over a continuum are
# sampled on deterministic sequences and report how much was sampled.

from dataclasses import dataclass
from typing import Optional, Sequence, Union
import logging

import numpy as np
from scipy.stats import norm, qmc
from tqdm import tqdm

from .errors import DimensionMismatchError, InputError, NotInConeError
from .polycone import Cone, as_float, double_description

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-12

@dataclass(frozen=True)
class LorentzCone:
    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 2:
            raise DimensionMismatchError("Lorentz cones need ambient dimension at least 2")

    def __str__(self) -> str:
        return f"lorentz(n={self.ambient_dim})"

def lorentz_membership(p: Sequence[float], L: LorentzCone, tol: float = MEMBERSHIP_TOL) -> bool:
    p = np.asarray(p, dtype=float)
    if p.shape != (L.ambient_dim,):
        raise DimensionMismatchError(f"point of shape {p.shape} for {L}")
    return bool(p[0] >= np.linalg.norm(p[1:]) - tol)

# Deterministic unit vectors in R^dim
# Circle grid in dim 2, Fibonacci lattice in dim 3, Halton points pushed
# through the inverse normal CDF otherwise.
def unit_sphere_samples(dim: int, count: int) -> np.ndarray:
    if dim < 1:
        raise DimensionMismatchError("sphere samples need dim >= 1")
    if dim == 1:
        return np.array([[1.0], [-1.0]])[:max(count, 1)]
    if dim == 2:
        theta = 2 * np.pi * np.arange(count) / count
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    if dim == 3:
        k = np.arange(count) + 0.5
        z = 1 - 2 * k / count
        phi = np.pi * (1 + 5 ** 0.5) * k
        r = np.sqrt(1 - z ** 2)
        return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    # The first Halton point is the origin of the unit cube, skip it
    pts = qmc.Halton(d=dim, scramble=False).random(count + 1)[1:]
    g = norm.ppf(pts)
    return g / np.linalg.norm(g, axis=1, keepdims=True)

# Sampled points of L: half of them on the boundary
def _lorentz_points(L: LorentzCone, count: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=(count, L.ambient_dim - 1))
    x *= rng.uniform(0, 1, size=(count, 1)) / np.linalg.norm(x, axis=1, keepdims=True)
    slack = rng.uniform(0, 1, size=count)
    slack[: count // 2] = 0.0
    t = np.linalg.norm(x, axis=1) + slack
    return np.concatenate([t[:, None], x], axis=1)

# Minimum of <p, q> over sampled pairs of points of L
# Self-duality of L makes this nonnegative up to rounding.
def lorentz_self_duality_check(L: LorentzCone, pairs: int = 1000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    P = _lorentz_points(L, pairs, rng)
    Q = _lorentz_points(L, pairs, rng)
    # Pair every point with a boundary point in the most opposed direction too
    Q_opp = np.concatenate([np.linalg.norm(P[:, 1:], axis=1, keepdims=True), -P[:, 1:]], axis=1)
    m = min(np.min(np.sum(P * Q, axis=1)), np.min(np.sum(P * Q_opp, axis=1)))
    logger.debug("lorentz self-duality over %d pairs: min <p,q> = %g", pairs, m)
    return float(m)


## Siegel cones ##

ConeK = Union[Cone, LorentzCone]

def _k_dim(K: ConeK) -> int:
    return K.ambient_dim

def k_membership(v: np.ndarray, K: ConeK, tol: float = MEMBERSHIP_TOL) -> bool:
    if isinstance(K, LorentzCone):
        return lorentz_membership(v, K, tol)
    A = np.array([as_float(a) for a in K.inequalities]).reshape(-1, K.ambient_dim)
    return bool(np.all(A @ v >= -tol))

# True iff v spans an extreme ray of K
def k_is_extreme(v: np.ndarray, K: ConeK, tol: float = 1e-9) -> bool:
    v = np.asarray(v, dtype=float)
    scale = np.linalg.norm(v)
    if scale <= tol or not k_membership(v, K, tol * scale):
        return False
    v = v / scale
    if isinstance(K, LorentzCone):
        return bool(abs(v[0] - np.linalg.norm(v[1:])) <= tol)
    if not K.pointed:
        return False
    A = np.array([as_float(a) for a in K.inequalities]).reshape(-1, K.ambient_dim)
    active = A[np.abs(A @ v) <= tol]
    if K.ambient_dim == 1:
        return True
    return bool(active.shape[0] > 0 and np.linalg.matrix_rank(active, tol=tol) == K.ambient_dim - 1)

# Data of a Siegel cone C(K, B)
# @param u_dim: dimension of U
# @param K: cone in V, polyhedral or Lorentz
# @param B: array of shape (dim V, dim U, dim U), one symmetric matrix per V-coordinate
@dataclass(frozen=True, eq=False)
class SiegelData:
    u_dim: int
    K: ConeK
    B: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.B, dtype=float)
        object.__setattr__(self, "B", B)
        expected = (_k_dim(self.K), self.u_dim, self.u_dim)
        if B.shape != expected:
            raise DimensionMismatchError(f"B has shape {B.shape}, expected {expected}")
        if np.max(np.abs(B - B.transpose(0, 2, 1)), initial=0.0) > MEMBERSHIP_TOL:
            raise InputError("B is not symmetric", "builtin.siegel.B")

    @property
    def v_dim(self) -> int:
        return _k_dim(self.K)

    def bilinear(self, u: np.ndarray, w: np.ndarray) -> np.ndarray:
        return np.einsum("kij,i,j->k", self.B, u, w)

    # B(u) = B(u, u)
    def quadratic(self, u: np.ndarray) -> np.ndarray:
        return self.bilinear(u, u)

@dataclass(frozen=True, eq=False)
class SiegelCone:
    data: SiegelData

    @property
    def ambient_dim(self) -> int:
        return self.data.u_dim + self.data.v_dim + 1

    # Splits a point into its (u, v, t) components
    def split(self, p: Sequence[float]) -> tuple[np.ndarray, np.ndarray, float]:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.ambient_dim,):
            raise DimensionMismatchError(f"point of shape {p.shape} for a Siegel cone of dimension {self.ambient_dim}")
        m = self.data.u_dim
        return p[:m], p[m:m + self.data.v_dim], float(p[-1])

@dataclass
class PositivityResult:
    ok: bool
    trials: int
    witness: Optional[np.ndarray] = None
    value: Optional[np.ndarray] = None

# Samples unit u and checks B(u, u) ∈ K∖{0}
# Coordinate vectors come first, then Halton points of [-1, 1]^dim U.
# ok=True only means no counterexample was found among the trials.
def k_positivity_check(D: SiegelData, trials: int = 1000) -> PositivityResult:
    m = D.u_dim
    candidates = [np.eye(m)[i] for i in range(m)]
    if trials > m:
        pts = 2 * qmc.Halton(d=m, scramble=False).random(trials - m + 1)[1:] - 1
        candidates += [p for p in pts]
    done = 0
    for u in candidates[:max(trials, m)]:
        n = np.linalg.norm(u)
        if n == 0:
            continue
        u = u / n
        done += 1
        b = D.quadratic(u)
        if np.linalg.norm(b) <= MEMBERSHIP_TOL or not k_membership(b, D.K):
            logger.info("K-positivity fails at u=%s: B(u,u)=%s", u, b)
            return PositivityResult(False, done, u, b)
    return PositivityResult(True, done)

def siegel_membership(p: Sequence[float], S: SiegelCone, tol: float = MEMBERSHIP_TOL) -> bool:
    u, v, t = S.split(p)
    K = S.data.K
    return t >= -tol and k_membership(v, K, tol) and k_membership(t * v - S.data.quadratic(u), K, tol)

# Extreme-ray classifier: extreme iff tv = B(u), and v spans an extreme ray
# of K when t = 0. The point is normalised first so the answer is scale
# invariant.
def siegel_is_extreme(p: Sequence[float], S: SiegelCone, tol: float = 1e-9) -> bool:
    p = np.asarray(p, dtype=float)
    scale = np.linalg.norm(p)
    if scale == 0 or not siegel_membership(p, S, tol * max(1.0, scale ** 2)):
        raise NotInConeError(f"{p.tolist()} is not a nonzero point of the Siegel cone")
    u, v, t = S.split(p / scale)
    if np.linalg.norm(t * v - S.data.quadratic(u)) > tol:
        return False
    if t > tol:
        return True
    return k_is_extreme(v, S.data.K, tol)

# The Siegel cone C(R>=0, <.,.>) on R^m and the linear map onto L_{m+2}
# In coordinates (u, v, t) the map is
#   (u, v, t) -> ((t + v)/√2, (t - v)/√2, √2 u)
# since ((t + v)² - (t - v)²)/2 - 2|u|² = 2(tv - |u|²).
def lorentz_as_siegel(m: int) -> tuple[SiegelCone, np.ndarray]:
    if m < 1:
        raise DimensionMismatchError("lorentz_as_siegel needs m >= 1")
    half_line = double_description(1, generators=[[1]], name="half-line")
    S = SiegelCone(SiegelData(m, half_line, np.eye(m)[None, :, :]))
    r = 1 / np.sqrt(2)
    Phi = np.zeros((m + 2, m + 2))
    Phi[0, m], Phi[0, m + 1] = r, r
    Phi[1, m], Phi[1, m + 1] = -r, r
    Phi[2:, :m] = np.sqrt(2) * np.eye(m)
    return S, Phi

# Fraction of samples on which Siegel membership and Lorentz membership of
# the image agree. A quarter of the samples sit exactly on the boundary.
def lorentz_siegel_agreement(m: int, samples: int = 10_000, seed: int = 0,
                             tol: float = 1e-9, progress: bool = False) -> float:
    S, Phi = lorentz_as_siegel(m)
    L = LorentzCone(m + 2)
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(samples, m + 2))
    nb = samples // 4
    u = pts[:nb, :m]
    t = rng.uniform(0.1, 2.0, size=nb)
    pts[:nb, m] = np.sum(u * u, axis=1) / t
    pts[:nb, m + 1] = t
    agree = 0
    for p in tqdm(pts, desc=f"siegel m={m}", disable=not progress):
        agree += siegel_membership(p, S, tol) == lorentz_membership(Phi @ p, L, tol)
    frac = agree / samples
    logger.debug("lorentz/siegel agreement for m=%d: %.4f", m, frac)
    return frac

@dataclass
class BoundarySample:
    point: np.ndarray
    extreme: bool

# Sample points of C(K, B), labelled with whether they span extreme rays
# Mixes boundary points with t > 0, points (0, v, 0) with v on an extreme
# ray of K or inside K, and points strictly inside the cone.
def siegel_boundary_samples(S: SiegelCone, count: int = 100, seed: int = 0) -> list[BoundarySample]:
    rng = np.random.default_rng(seed)
    D = S.data
    K = D.K
    if isinstance(K, LorentzCone):
        w = unit_sphere_samples(K.ambient_dim - 1, 8)
        k_rays = [np.concatenate([[1.0], x]) for x in w]
    else:
        k_rays = [as_float(g) for g in K.generators]
    k_inner = sum(k_rays) / len(k_rays)

    out = []
    for i in range(count):
        kind = i % 4
        u = rng.normal(size=D.u_dim)
        t = rng.uniform(0.2, 2.0)
        if kind == 0 or kind == 1:
            v = D.quadratic(u) / t
            out.append(BoundarySample(np.concatenate([u, v, [t]]), True))
        elif kind == 2:
            g = k_rays[rng.integers(len(k_rays))] * rng.uniform(0.5, 2.0)
            out.append(BoundarySample(np.concatenate([np.zeros(D.u_dim), g, [0.0]]), True))
        else:
            v = D.quadratic(u) / t + rng.uniform(0.5, 2.0) * k_inner
            out.append(BoundarySample(np.concatenate([u, v, [t]]), False))
    return out
