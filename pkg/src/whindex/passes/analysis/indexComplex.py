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

# Augmented cellular complex of a section of Ω, its homology over Z and the
# K-theory parity of the Σ fibres

from ...indexcomplex import (build_cellular_complex, euler_characteristic, homology,
                             k_parity_table, verify_boundary_squared)
from ...passes.genericpass import AnalysisContext, Pass
from ...report import ComplexSection, ParityEntry

class IndexComplex(Pass):
    def __init__(self):
        super().__init__("complex", requires=("stratify",))

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        if not ctx.polyhedral:
            ctx.report.notes.append("index complex skipped: P_1 of the Lorentz cone is a continuum")
            return ctx
        S = ctx.strat
        C = build_cellular_complex(S)
        squared = verify_boundary_squared(C)
        ctx.report.add_check("boundary-squared-zero", squared, max(C.d - 1, 0))
        if not squared:
            return ctx

        H = homology(C)
        shuffled = homology(build_cellular_complex(S, seed=ctx.options.seed)).exact
        chi = euler_characteristic(C)
        parity = k_parity_table(S)
        ctx.report.complex = ComplexSection(
            ranks=list(C.ranks), boundaries=[[list(r) for r in D] for D in C.boundaries],
            boundary_squared_zero=squared, betti=list(H.betti), torsion=[list(t) for t in H.torsion],
            exact=H.exact, euler_characteristic=chi,
            parity=[ParityEntry(j=r.j, rank=r.rank, fibre_dim=r.fibre_dim, degree=r.degree) for r in parity.rows],
            parity_alternates=parity.alternates, shuffled_exact=shuffled)
        ctx.report.add_check("complex-exact", H.exact, C.d + 1, f"betti {list(H.betti)}")
        ctx.report.add_check("complex-exact-reordered", shuffled, C.d + 1, f"seed {ctx.options.seed}")
        ctx.report.add_check("euler-characteristic-zero", chi == 0, 1)
        ctx.report.add_check("k-parity-alternates", parity.alternates, len(parity.rows))
        return ctx
