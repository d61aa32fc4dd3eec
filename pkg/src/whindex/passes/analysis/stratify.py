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

# Stratification of the dual cone, Σ fibres and the incidence spaces 𝒫_j

from ...curvedcones import lorentz_self_duality_check
from ...errors import InputError, NotPointedError, NotSolidError
from ...passes.genericpass import AnalysisContext, Pass
from ...ratlin import to_strings
from ...report import ConeSection, IncidenceRow, StratificationSection
from ...strata import (incidence_space, lorentz_is_modular, sigma_fibres, stratify,
                       stratify_lorentz, xi_image_is_modular)

class Stratify(Pass):
    def __init__(self):
        super().__init__("stratify")

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        doc = ctx.doc
        if doc is None or doc.kind == "siegel":
            raise InputError("stratification needs a polyhedral or Lorentz cone document", "builtin")
        if doc.kind == "lorentz":
            return self._run_lorentz(ctx)

        C = doc.to_cone()
        ctx.cone = C
        ctx.report.cone = ConeSection(name=doc.name, kind="polyhedral", ambient_dim=C.ambient_dim,
                                      generators=[to_strings(g) for g in C.generators],
                                      inequalities=[to_strings(a) for a in C.inequalities],
                                      pointed=C.pointed, solid=C.solid)
        try:
            S = stratify(C)
        except (NotPointedError, NotSolidError) as e:
            raise InputError(str(e), "generators" if doc.generators else "inequalities") from None
        ctx.strat = S
        ctx.report.stratification = StratificationSection(
            dims=list(S.dims), stratum_sizes=S.sizes(), facially_compact=S.facially_compact,
            fibre_dims=[sigma_fibres(S, j)[0].dim for j in range(S.d + 1)],
            strata=[[list(F.key) for F in P] for P in S.strata])
        ctx.report.add_check("strata-partition-faces", sum(S.sizes()) == len(S.lattice.faces),
                             len(S.lattice.faces))

        rows = []
        for j in range(1, S.d + 1):
            inc = incidence_space(S, j)
            modular = xi_image_is_modular(S, j)
            rows.append(IncidenceRow(j=j, pairs=len(inc.pairs), xi_surjective=inc.xi_surjective,
                                     eta_surjective=inc.eta_surjective, xi_image_modular=modular))
            ctx.report.add_check(f"xi-image-modular-{j}", modular, len(S.strata[j - 1]))
        ctx.report.incidence = rows
        return ctx

    def _run_lorentz(self, ctx: AnalysisContext) -> AnalysisContext:
        L = ctx.doc.to_lorentz()
        n = L.ambient_dim
        ctx.cone = L
        ctx.report.cone = ConeSection(name=ctx.doc.name, kind="lorentz", ambient_dim=n)
        LS = stratify_lorentz(L, ctx.options.lorentz_samples)
        ctx.strat = LS
        samples = len(LS.omegas)
        # strata P_0, P_1, P_2 hold faces of dimension n, 1, 0
        ctx.report.stratification = StratificationSection(
            dims=list(LS.dims), stratum_sizes=LS.sizes(), facially_compact=LS.facially_compact,
            fibre_dims=[0, n - 1, n])
        ctx.report.incidence = [
            IncidenceRow(j=1, pairs=samples, xi_surjective=True, eta_surjective=True,
                         xi_image_modular=lorentz_is_modular(n, LS)),
            IncidenceRow(j=2, pairs=samples, xi_surjective=True, eta_surjective=True,
                         xi_image_modular=lorentz_is_modular(1, LS))]
        worst = lorentz_self_duality_check(L, pairs=1000, seed=ctx.options.seed)
        ctx.report.add_check("lorentz-self-duality", worst >= -1e-12, 1000, f"min <p, q> = {worst:.3e}")
        ctx.report.notes.append(f"P_1 is a continuum of rays; {samples} sampled")
        return ctx
