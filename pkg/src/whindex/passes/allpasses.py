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

from typing import Optional

from ..passes.analysis.classicalAnchor import ClassicalAnchor
from ..passes.analysis.indexComplex import IndexComplex
from ..passes.analysis.metricSuite import MetricSuite
from ..passes.analysis.pairGeometry import PairGeometryPass
from ..passes.analysis.siegelChecks import SiegelChecks
from ..passes.analysis.stratify import Stratify
from ..passes.genericpass import AnalysisContext, Pass
from ..passes.validation.checkSmoothness import CheckSmoothness

def find_pass(p: list[Pass], id: str) -> Optional[Pass]:
    return next((e for e in p if e.id == id), None)

all_passes = [Stratify(), CheckSmoothness(), PairGeometryPass(), IndexComplex(), MetricSuite(),
              SiegelChecks(), ClassicalAnchor()]

# Pass ids run by each subcommand, in order
pipelines = {
    "analyze": ["stratify", "smooth", "geometry", "complex", "metric"],
    "stratify": ["stratify"],
    "smooth": ["stratify", "smooth"],
    "complex": ["stratify", "complex"],
    "metric": ["stratify", "metric"],
    "classical": ["classical"],
    "siegel": ["siegel"],
}

# Runs the passes named by ids in order
# Every pass must find the passes it requires earlier in the pipeline.
def run_pipeline(ids: list[str], ctx: AnalysisContext) -> AnalysisContext:
    done: list[str] = []
    for id in ids:
        p = find_pass(all_passes, id)
        assert p is not None, f"Sanity check: unknown pass {id}"
        missing = [r for r in p.requires if r not in done]
        assert not missing, f"Sanity check: pass {id} needs {missing} first"
        ctx = p.run(ctx)
        done.append(id)
    return ctx
