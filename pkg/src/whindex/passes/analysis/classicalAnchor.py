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

# Toeplitz operators on the circle: index(T[s]) = -winding(s)

from ...classicwh import (LaurentSymbol, classical_corpus, index_theorem_check,
                          winding_additivity)
from ...passes.genericpass import AnalysisContext, Pass
from ...report import ClassicalSection, IndexEntry

class ClassicalAnchor(Pass):
    def __init__(self):
        super().__init__("classical")

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        opts = ctx.options
        symbols = [LaurentSymbol.parse(s) for s in opts.symbols] or classical_corpus()
        checks = [index_theorem_check(s, opts.sections) for s in symbols]
        additive, pairs = winding_additivity(symbols)
        ctx.report.classical = ClassicalSection(
            rows=[IndexEntry(symbol=c.symbol, winding=c.winding, index=c.index, passed=c.passed) for c in checks],
            additivity_ok=additive, additivity_pairs=pairs)
        ctx.report.add_check("index-equals-minus-winding", all(c.passed for c in checks), len(checks))
        ctx.report.add_check("winding-additive", additive, pairs)
        return ctx
