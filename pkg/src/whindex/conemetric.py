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

# Truncated Hausdorff metric on closed convex cones
#
#   e(A, B) = sup{dist(a, B) : a ∈ A, |a| <= 1}
#   h(A, B) = max(e(A, B), e(B, A))
#
# dist(., B) is convex, so the sup is attained on A ∩ sphere or at the origin.
# It is evaluated on deterministic sphere grids pushed onto A, plus the
# generators of A, then refined by a few rounds of local search.

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt
from tqdm import tqdm

from .curvedcones import unit_sphere_samples
from .errors import DimensionMismatchError, MetricRegimeError, StratumIndexError
from .polycone import Cone, as_float, cone_projector, double_description, dual_cone
from .strata import (Stratification, incidence_space, lorentz_pair_geometry,
                     pair_geometry)

logger = logging.getLogger(__name__)

# Grid points per angular coordinate, by ambient dimension
DEFAULT_SAMPLES = {1: 2, 2: 720, 3: 64, 4: 24}

class MetricConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    # points per angular coordinate of the sphere grid; None picks by dimension
    sphere_samples_per_dim: Optional[PositiveInt] = None
    refinement_rounds: PositiveInt = 2
    tolerance: PositiveFloat = 5e-3

    def samples_for(self, n: int) -> int:
        if self.sphere_samples_per_dim is not None:
            return self.sphere_samples_per_dim
        return DEFAULT_SAMPLES.get(n, 12)

# Product grid on S^{n-1} in hyperspherical coordinates
# @param m: azimuth steps; polar angles are kπ/m for k = 0..m, so the grid
#   for 2m contains the grid for m
def sphere_grid(n: int, m: int) -> np.ndarray:
    if n < 1:
        raise DimensionMismatchError("sphere grid needs n >= 1")
    if n == 1:
        return np.array([[1.0], [-1.0]])
    polar = [np.linspace(0, np.pi, m + 1)] * (n - 2)
    azimuth = 2 * np.pi * np.arange(m) / m
    angles = np.meshgrid(*polar, azimuth, indexing="ij")
    angles = [a.ravel() for a in angles]
    out = np.empty((angles[0].size, n))
    sines = np.ones(angles[0].size)
    for i, a in enumerate(angles):
        out[:, i] = sines * np.cos(a)
        sines = sines * np.sin(a)
    out[:, n - 1] = sines
    return out

def _normalize_rows(X: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(X, axis=1)
    keep = norms > 1e-12
    return X[keep] / norms[keep, None]

def _check_dims(A: Cone, B: Cone):
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatchError(f"cones in R^{A.ambient_dim} and R^{B.ambient_dim}")

# Sampled excess e(A, B) over A ∩ unit ball
def excess(A: Cone, B: Cone, cfg: Optional[MetricConfig] = None) -> float:
    cfg = cfg or MetricConfig()
    _check_dims(A, B)
    n = A.ambient_dim
    PA, PB = cone_projector(A), cone_projector(B)

    G = _normalize_rows(np.array([as_float(g) for g in A.generators]).reshape(-1, n))
    pts = [G]
    if len(G) > 1:
        i, j = np.triu_indices(len(G), 1)
        pts.append(G[i] + G[j])
    m = cfg.samples_for(n)
    pts.append(PA.project_many(sphere_grid(n, m)))
    X = _normalize_rows(np.vstack(pts))
    if len(X) == 0:
        return 0.0
    dist = PB.distance_many(X)
    best = max(0.0, float(dist.max()))

    # Local search around the best samples along coordinate directions
    k = min(8, len(X))
    top = np.argsort(-dist, kind="stable")[:k]
    cand, cand_d = X[top], dist[top]
    moves = np.vstack([np.eye(n), -np.eye(n)])
    step = np.pi / m
    for _ in range(cfg.refinement_rounds):
        for _ in range(8):
            trial = (cand[:, None, :] + step * moves[None, :, :]).reshape(-1, n)
            trial = PA.project_many(trial)
            norms = np.linalg.norm(trial, axis=1)
            ok = norms > 1e-12
            trial[ok] /= norms[ok, None]
            td = np.where(ok, PB.distance_many(trial), -np.inf).reshape(k, 2 * n)
            arg = np.argmax(td, axis=1)
            gain = td[np.arange(k), arg] > cand_d
            if not gain.any():
                break
            cand[gain] = trial.reshape(k, 2 * n, n)[np.arange(k), arg][gain]
            cand_d[gain] = td[np.arange(k), arg][gain]
        step /= 2
    best = max(best, float(cand_d.max()))
    return best

def hausdorff_h(A: Cone, B: Cone, cfg: Optional[MetricConfig] = None) -> float:
    return max(excess(A, B, cfg), excess(B, A, cfg))

# h between the rays through two unit vectors, valid when <e1, e2> >= 0
def ray_distance(e1: Sequence[float], e2: Sequence[float]) -> float:
    e1, e2 = np.asarray(e1, dtype=float), np.asarray(e2, dtype=float)
    if e1.shape != e2.shape:
        raise DimensionMismatchError("ray directions of different lengths")
    if abs(np.linalg.norm(e1) - 1) > 1e-12 or abs(np.linalg.norm(e2) - 1) > 1e-12:
        raise MetricRegimeError("ray directions must be unit vectors")
    c = float(e1 @ e2)
    if c < -1e-12:
        raise MetricRegimeError(f"<e1, e2> = {c} < 0, outside the ray formula")
    return float(np.sqrt(max(0.0, 1 - c * c)))

# The cone over a float direction, with rational entries close to it
def float_ray_cone(e: Sequence[float], digits: int = 12) -> Cone:
    return double_description(len(e), generators=[[Fraction(x).limit_denominator(10 ** digits) for x in e]])

@dataclass
class PolarityReport:
    h_primal: float
    h_dual: float
    gap: float
    ok: bool

# Walkup-Wets: C -> C* is an isometry for h
def polarity_isometry_check(A: Cone, B: Cone, cfg: Optional[MetricConfig] = None) -> PolarityReport:
    cfg = cfg or MetricConfig()
    hp = hausdorff_h(A, B, cfg)
    hd = hausdorff_h(dual_cone(A), dual_cone(B), cfg)
    gap = abs(hp - hd)
    if gap > cfg.tolerance:
        logger.warning("polarity gap %.3g exceeds tolerance for %s, %s", gap, A, B)
    return PolarityReport(hp, hd, gap, gap <= cfg.tolerance)

# Largest |h(ray1, ray2) - sqrt(1 - <e1, e2>^2)| over ray pairs in R^2 with
# angle in [0, π/2]
def ray_formula_check(pairs: int = 720, cfg: Optional[MetricConfig] = None, progress: bool = False) -> float:
    cfg = cfg or MetricConfig()
    worst = 0.0
    for k in tqdm(range(pairs), desc="ray pairs", disable=not progress):
        alpha = 2 * np.pi * k / pairs
        theta = (np.pi / 2) * k / max(pairs - 1, 1)
        e1 = np.array([np.cos(alpha), np.sin(alpha)])
        e2 = np.array([np.cos(alpha + theta), np.sin(alpha + theta)])
        h = hausdorff_h(float_ray_cone(e1), float_ray_cone(e2), cfg)
        worst = max(worst, abs(h - ray_distance(e1, e2 / np.linalg.norm(e2))))
    logger.debug("ray formula check over %d pairs: max error %.3g", pairs, worst)
    return worst

@dataclass
class LipschitzReport:
    checked: int = 0
    skipped: int = 0
    max_violation: float = 0.0
    ok: bool = True
    pairs: list[dict] = field(default_factory=list)

def _sandwich(report: LipschitzReport, e1: np.ndarray, e2: np.ndarray, h: float, tol: float, label: str):
    d = float(np.linalg.norm(e1 - e2))
    violation = max(h - d, d - np.sqrt(2) * h, 0.0)
    report.checked += 1
    report.max_violation = max(report.max_violation, violation)
    if violation > tol:
        report.ok = False
        logger.warning("bi-Lipschitz sandwich fails for %s by %.3g", label, violation)
    report.pairs.append({"pair": label, "h": h, "norm": d})

# Sandwich h(F1, F2) ≤ |e1 - e2| ≤ √2·h(F1, F2) over distinct pairs (F1, F2) in
# the fibre of ξ over E, with h the sampled metric between the face cones.
# Pairs with <e1, e2> < 0 lie outside the ray formula and are counted as skipped.
def lipschitz_probe(E, S: Stratification, cfg: Optional[MetricConfig] = None) -> LipschitzReport:
    cfg = cfg or MetricConfig()
    report = LipschitzReport()
    upper = next((j for j in range(S.d) if any(G.key == E.key for G in S.strata[j])), None)
    if upper is None:
        raise StratumIndexError(f"{E} is not in the image of any ξ")
    j = upper + 1
    fibre = [F for (E2, F) in incidence_space(S, j).pairs if E2.key == E.key]
    units = [np.array(pair_geometry(E, F, S).e_vector_unit) for F in fibre]
    cones: dict[int, Cone] = {}
    for a in range(len(fibre)):
        for b in range(a + 1, len(fibre)):
            if units[a] @ units[b] < 0:
                report.skipped += 1
                continue
            for i in (a, b):
                if i not in cones:
                    cones[i] = double_description(S.ambient_dim, generators=fibre[i].generators)
            h = hausdorff_h(cones[a], cones[b], cfg)
            _sandwich(report, units[a], units[b], h, cfg.tolerance, f"{list(fibre[a].key)}~{list(fibre[b].key)}")
    return report

# Same sandwich on the Lorentz fibre over Ω*, the sphere of rays F = ray(1, ω)
# h between two rays is the ray formula on their directions. Sample i is paired
# with a distinct partner at a varying offset.
def lorentz_lipschitz_probe(n: int, samples: int = 720, cfg: Optional[MetricConfig] = None) -> LipschitzReport:
    cfg = cfg or MetricConfig()
    report = LipschitzReport()
    omegas = unit_sphere_samples(n - 1, samples)
    geoms = [lorentz_pair_geometry(w, n, 1) for w in omegas]
    N = len(geoms)
    for a in range(N if N > 1 else 0):
        b = (a + 1 + a % (N - 1)) % N
        Ga, Gb = geoms[a], geoms[b]
        h = ray_distance(Ga.F_basis[:, 0], Gb.F_basis[:, 0])
        _sandwich(report, Ga.e_vector_unit, Gb.e_vector_unit, h, cfg.tolerance, f"w{a}~w{b}")
    report.pairs = []
    return report
