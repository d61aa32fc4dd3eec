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

# Siegel cones C(K, B): K-positivity of B, the extreme ray classification on
# boundary samples, and Lorentz cones seen as Siegel cones

from ...curvedcones import (SiegelCone, k_positivity_check, lorentz_as_siegel,
                            lorentz_siegel_agreement, siegel_boundary_samples,
                            siegel_is_extreme)
from ...passes.genericpass import AnalysisContext, Pass
from ...report import ConeSection, SiegelAgreementEntry, SiegelSection

AGREEMENT_SAMPLES = 10_000
AGREEMENT_MIN = 0.99
BOUNDARY_SAMPLES = 100

class SiegelChecks(Pass):
    def __init__(self):
        super().__init__("siegel")

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        opts = ctx.options
        section = SiegelSection()
        if ctx.doc is not None and ctx.doc.kind == "siegel":
            S = ctx.doc.to_siegel()
            ctx.cone = S
            ctx.report.cone = ConeSection(name=ctx.doc.name, kind="siegel", ambient_dim=S.ambient_dim)
            pos = k_positivity_check(S.data, opts.trials)
            section.positivity_ok, section.positivity_trials = pos.ok, pos.trials
            if pos.witness is not None:
                section.positivity_witness = [float(x) for x in pos.witness]
            ctx.report.add_check("k-positivity", pos.ok, pos.trials)
            if not pos.ok:
                ctx.report.notes.append("extreme ray classification skipped: B is not K-positive")
                S = None
        else:
            m = opts.siegel_m[0] if opts.siegel_m else 1
            S, _ = lorentz_as_siegel(m)
            ctx.report.notes.append(f"boundary samples drawn from the Lorentz cone of R^{m + 2} as a Siegel cone")

        if S is not None:
            self._classify(ctx, S, section)
        for m in opts.siegel_m:
            frac = lorentz_siegel_agreement(m, AGREEMENT_SAMPLES, opts.seed, progress=opts.progress)
            section.agreement.append(SiegelAgreementEntry(m=m, samples=AGREEMENT_SAMPLES, agreement=frac))
            ctx.report.add_check(f"lorentz-siegel-agreement-{m}", frac >= AGREEMENT_MIN, AGREEMENT_SAMPLES,
                                 f"agreement {frac:.4f}")
        ctx.report.siegel = section
        return ctx

    def _classify(self, ctx: AnalysisContext, S: SiegelCone, section: SiegelSection):
        section.u_dim, section.v_dim = S.data.u_dim, S.data.v_dim
        samples = siegel_boundary_samples(S, BOUNDARY_SAMPLES, ctx.options.seed)
        agree = sum(siegel_is_extreme(b.point, S) == b.extreme for b in samples)
        section.extreme_samples, section.extreme_agree = len(samples), agree
        ctx.report.add_check("siegel-extreme-rays", agree == len(samples), len(samples))
