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

from ...passes.genericpass import AnalysisContext, Pass
from ...report import SmoothnessSection
from ...strata import is_locally_smooth, lorentz_smoothness

# Local smoothness of Ω*: every modular face is smooth along its maximal subfaces
class CheckSmoothness(Pass):
    def __init__(self):
        super().__init__("smooth", requires=("stratify",))

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        S = ctx.strat
        verdict = is_locally_smooth(S.dual, S) if ctx.polyhedral else lorentz_smoothness(S)
        ctx.report.smoothness = SmoothnessSection(
            locally_smooth=verdict.locally_smooth, instances=verdict.checked,
            witnesses=[[list(E), list(F)] for E, F in verdict.witnesses])
        ctx.report.add_check("locally-smooth", verdict.locally_smooth, verdict.checked)
        return ctx
