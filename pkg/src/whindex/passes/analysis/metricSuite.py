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

# Truncated Hausdorff metric checks: the ray formula, Walkup-Wets polarity
# and the bi-Lipschitz sandwich on the fibres of ξ

from ...conemetric import (lipschitz_probe, lorentz_lipschitz_probe, polarity_isometry_check,
                           ray_formula_check)
from ...passes.genericpass import AnalysisContext, Pass
from ...polycone import Cone, double_description, dual_cone
from ...report import LipschitzEntry, MetricSection, PolarityEntry
from ...strata import incidence_space

RAY_PAIRS = 720

# Ω against its dual and against the cones left after dropping one generator
def _polarity_partners(C: Cone) -> list[tuple[str, Cone]]:
    out = [("dual", dual_cone(C))]
    if len(C.generators) > 1:
        for i in range(len(C.generators)):
            rest = [g for k, g in enumerate(C.generators) if k != i]
            out.append((f"drop {i}", double_description(C.ambient_dim, generators=rest, name=f"drop {i}")))
    return out

class MetricSuite(Pass):
    def __init__(self):
        super().__init__("metric", requires=("stratify",))

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        cfg = ctx.options.metric_cfg
        n = ctx.strat.ambient_dim
        section = MetricSection(tolerance=cfg.tolerance, samples_per_dim=cfg.samples_for(n))
        error = ray_formula_check(RAY_PAIRS, cfg, ctx.options.progress)
        section.ray_formula_pairs, section.ray_formula_error = RAY_PAIRS, error
        ctx.report.add_check("ray-formula", error <= cfg.tolerance, RAY_PAIRS, f"max error {error:.3e}")

        if ctx.polyhedral:
            self._polyhedral(ctx, section)
        else:
            r = lorentz_lipschitz_probe(n, ctx.options.lorentz_samples, cfg)
            section.lipschitz.append(LipschitzEntry(E="lorentz", checked=r.checked, skipped=r.skipped,
                                                    max_violation=r.max_violation, ok=r.ok))
            ctx.report.notes.append("polarity check skipped: the Lorentz cone is self-dual")
        lip = section.lipschitz
        ctx.report.add_check("bi-lipschitz", all(l.ok for l in lip), sum(l.checked for l in lip),
                             f"{sum(l.skipped for l in lip)} pairs outside the ray formula")
        ctx.report.metric = section
        return ctx

    def _polyhedral(self, ctx: AnalysisContext, section: MetricSection):
        cfg = ctx.options.metric_cfg
        S = ctx.strat
        C = S.cone
        for label, B in _polarity_partners(C):
            r = polarity_isometry_check(C, B, cfg)
            section.polarity.append(PolarityEntry(A=C.name or "cone", B=label, h_primal=r.h_primal,
                                                  h_dual=r.h_dual, gap=r.gap, ok=r.ok))
        ctx.report.add_check("polarity-isometry", all(p.ok for p in section.polarity), len(section.polarity))

        for j in range(1, S.d + 1):
            for E in incidence_space(S, j).xi_image:
                r = lipschitz_probe(E, S, cfg)
                section.lipschitz.append(LipschitzEntry(E="{" + ",".join(map(str, E.key)) + "}",
                                                        checked=r.checked, skipped=r.skipped,
                                                        max_violation=r.max_violation, ok=r.ok))
