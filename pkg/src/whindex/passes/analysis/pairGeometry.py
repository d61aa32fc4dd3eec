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

# Pair geometry over every incidence space: e_F(E), E_{1/2}(F) and the
# decomposition F⊥ = E⊥ ⊕ E_{1/2}(F) ⊕ R·e_F

from collections import defaultdict

from ...passes.genericpass import AnalysisContext, Pass
from ...ratlin import to_strings
from ...report import DimensionFormulaEntry, PairGeometrySection, PairRow
from ...strata import (PairGeometry, check_embedding_injective, dimension_formula_rows,
                       incidence_space, lorentz_geometries, lorentz_tangent_probe,
                       pair_geometry, tangent_fibre_check, verify_decomposition,
                       verify_float_decomposition)

TANGENT_EPS = 1e-4
TANGENT_TOL = 1e-3

# Worker for Pass.map
def _geometry(job) -> tuple[PairGeometry, bool]:
    E, F, S = job
    G = pair_geometry(E, F, S)
    return G, verify_decomposition(G)

def _formula_entries(S, observed: dict[int, list[int]]) -> list[DimensionFormulaEntry]:
    return [DimensionFormulaEntry(j=r.j, containment_value=r.containment_value,
                                  shifted_index_value=r.shifted_index_value, observed=r.observed,
                                  values_agree=r.values_agree, observed_matches=r.observed_matches)
            for r in dimension_formula_rows(S, observed)]

class PairGeometryPass(Pass):
    def __init__(self):
        super().__init__("geometry", requires=("stratify",))

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        if ctx.lorentz:
            return self._run_lorentz(ctx)
        S = ctx.strat
        rows, observed = [], {}
        passes, injective = 0, True
        for j in range(1, S.d + 1):
            jobs = [(E, F, S) for E, F in incidence_space(S, j).pairs]
            results = self.map(_geometry, jobs, ctx.options.jobs)
            geometries = [G for G, _ in results]
            ctx.geometries[j] = geometries
            observed[j] = [G.half_space_dim for G in geometries]
            injective = injective and check_embedding_injective(S, j, geometries)
            for G, ok in results:
                passes += ok
                rows.append(PairRow(j=j, E=list(G.E.key), F=list(G.F.key), e_ray=to_strings(G.e_vector_ray),
                                    half_space_dim=G.half_space_dim, decomposition_ok=ok))
        tangent = tangent_fibre_check(S, ctx.geometries.get(1, []))
        formula = _formula_entries(S, observed)

        ctx.report.pair_geometry = PairGeometrySection(
            pairs_checked=len(rows), decomposition_passes=passes,
            half_space_dims={str(j): sorted(set(v)) for j, v in observed.items()},
            embedding_injective=injective, tangent_fibre_ok=tangent, dimension_formula=formula,
            dimension_formula_discrepancy=any(not r.values_agree for r in formula), rows=rows)
        self._record(ctx, passes, len(rows), formula, observed)
        ctx.report.add_check("embedding-injective", injective, len(rows))
        ctx.report.add_check("tangent-fibre", tangent, len(ctx.geometries.get(1, [])))
        return ctx

    def _run_lorentz(self, ctx: AnalysisContext) -> AnalysisContext:
        LS = ctx.strat
        n = LS.ambient_dim
        geometries = lorentz_geometries(LS, ctx.options.progress)
        observed = defaultdict(list)
        passes, worst = 0, 0.0
        for G in geometries:
            ok, residual = verify_float_decomposition(G)
            passes += ok
            worst = max(worst, residual)
            observed[G.j].append(G.half_space_dim)
        formula = _formula_entries(LS, observed)
        probe = lorentz_tangent_probe(n, samples=64, eps=TANGENT_EPS) if n >= 3 else None

        ctx.report.pair_geometry = PairGeometrySection(
            pairs_checked=len(geometries), decomposition_passes=passes,
            half_space_dims={str(j): sorted(set(v)) for j, v in sorted(observed.items())},
            max_residual=worst, tangent_probe_residual=probe,
            tangent_fibre_ok=None if probe is None else probe <= TANGENT_TOL,
            dimension_formula=formula,
            dimension_formula_discrepancy=any(not r.values_agree for r in formula))
        self._record(ctx, passes, len(geometries), formula, observed)
        if probe is None:
            ctx.report.notes.append("tangent probe skipped: the rays of the Lorentz cone in R^2 are discrete")
        else:
            ctx.report.add_check("tangent-fibre", probe <= TANGENT_TOL, 64, f"residual {probe:.3e}")
        return ctx

    def _record(self, ctx: AnalysisContext, passes: int, total: int,
                formula: list[DimensionFormulaEntry], observed: dict[int, list[int]]):
        ctx.report.add_check("decomposition", passes == total, total)
        for r in formula:
            ctx.report.add_check(f"half-space-dim-{r.j}", r.observed_matches, len(observed.get(r.j, [])),
                                 f"expected {r.containment_value}, seen {r.observed}")
        if any(not r.values_agree for r in formula):
            ctx.report.notes.append("dimension formula: the shifted-index value differs from the "
                                    "containment value; the containment value is used")
