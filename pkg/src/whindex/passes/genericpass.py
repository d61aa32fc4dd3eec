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

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, TypeVar, Union
import logging
import multiprocessing

from ..conemetric import MetricConfig
from ..curvedcones import LorentzCone, SiegelCone
from ..parser import ConeDocument
from ..polycone import Cone
from ..report import AnalysisReport
from ..strata import LorentzStratification, Stratification

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Explicit runtime configuration, filled in from the command line
@dataclass
class AnalysisOptions:
    metric: bool = False
    seed: int = 0
    jobs: int = 1
    lorentz_samples: int = 720
    progress: bool = True
    metric_cfg: MetricConfig = field(default_factory=MetricConfig)
    # classical anchor
    symbols: list[str] = field(default_factory=list)
    sections: Optional[int] = None
    # siegel checks
    siegel_m: list[int] = field(default_factory=lambda: [1, 2])
    trials: int = 1000

# State threaded through a pipeline
# Passes read what earlier passes computed and fill one report section each.
@dataclass
class AnalysisContext:
    report: AnalysisReport
    options: AnalysisOptions
    doc: Optional[ConeDocument] = None
    cone: Optional[Union[Cone, LorentzCone, SiegelCone]] = None
    strat: Optional[Union[Stratification, LorentzStratification]] = None
    # pair geometries per stratum index j
    geometries: dict = field(default_factory=dict)

    @property
    def polyhedral(self) -> bool:
        return isinstance(self.strat, Stratification)

    @property
    def lorentz(self) -> bool:
        return isinstance(self.strat, LorentzStratification)

class Pass:
    def __init__(self, id: str, requires: tuple[str, ...] = ()):
        self.id = id
        # ids of the passes that must run first
        self.requires = requires

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        return ctx

    # Maps fn over items, in parallel when jobs > 1
    # Results always come back in input order, so reports do not depend on jobs.
    # @param fn: a module-level function, so that it can be pickled
    def map(self, fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
        items = list(items)
        if jobs <= 1 or len(items) < 2:
            return [fn(x) for x in items]
        logger.debug("pass %s: %d items over %d processes", self.id, len(items), jobs)
        with multiprocessing.Pool(jobs) as pool:
            return pool.map(fn, items)
