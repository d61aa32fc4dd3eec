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

# Versioned analysis report and its JSON / markdown renderings
#
# Every boolean verdict sits next to the number of instances it was checked
# on. Sections a pipeline did not run stay None.

from typing import Literal, Optional
import logging

from pydantic import BaseModel, ConfigDict

logger = logging.getLogger(__name__)

FaceKey = list[int]

class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")

class CheckOutcome(_Section):
    name: str
    passed: bool
    instances: int
    detail: str = ""

class ConeSection(_Section):
    name: str
    kind: Literal["polyhedral", "lorentz", "siegel"]
    ambient_dim: int
    # rational strings; empty for curved cones
    generators: list[list[str]] = []
    inequalities: list[list[str]] = []
    pointed: bool = True
    solid: bool = True

class StratificationSection(_Section):
    dims: list[int]
    # None marks a continuum
    stratum_sizes: list[Optional[int]]
    facially_compact: bool
    # dim F⊥ of the Σ_j fibres
    fibre_dims: list[int]
    # face keys of Ω* per stratum (polyhedral)
    strata: list[list[FaceKey]] = []

class IncidenceRow(_Section):
    j: int
    pairs: int
    xi_surjective: bool
    eta_surjective: bool
    xi_image_modular: bool

class SmoothnessSection(_Section):
    locally_smooth: bool
    instances: int
    # (E, F) face keys where smoothness fails
    witnesses: list[list[FaceKey]] = []

class PairRow(_Section):
    j: int
    E: FaceKey
    F: FaceKey
    e_ray: list[str]
    half_space_dim: int
    decomposition_ok: bool

class DimensionFormulaEntry(_Section):
    j: int
    containment_value: int
    shifted_index_value: Optional[int]
    observed: list[int]
    values_agree: bool
    observed_matches: bool

class PairGeometrySection(_Section):
    pairs_checked: int
    decomposition_passes: int
    # per j, the distinct dims of E_{1/2}(F) seen
    half_space_dims: dict[str, list[int]]
    embedding_injective: Optional[bool] = None
    tangent_fibre_ok: Optional[bool] = None
    # Lorentz closed forms only
    max_residual: Optional[float] = None
    tangent_probe_residual: Optional[float] = None
    dimension_formula: list[DimensionFormulaEntry] = []
    # formula values differ from each other or from what was observed
    dimension_formula_discrepancy: bool = False
    rows: list[PairRow] = []

class ParityEntry(_Section):
    j: int
    rank: int
    fibre_dim: int
    degree: int

class ComplexSection(_Section):
    ranks: list[int]
    boundaries: list[list[list[int]]]
    boundary_squared_zero: bool
    betti: list[int]
    torsion: list[list[int]]
    exact: bool
    euler_characteristic: int
    parity: list[ParityEntry]
    parity_alternates: bool
    shuffled_exact: Optional[bool] = None

class PolarityEntry(_Section):
    A: str
    B: str
    h_primal: float
    h_dual: float
    gap: float
    ok: bool

class LipschitzEntry(_Section):
    E: str
    checked: int
    skipped: int
    max_violation: float
    ok: bool

class MetricSection(_Section):
    tolerance: float
    samples_per_dim: int
    ray_formula_pairs: int = 0
    ray_formula_error: Optional[float] = None
    polarity: list[PolarityEntry] = []
    lipschitz: list[LipschitzEntry] = []

class IndexEntry(_Section):
    symbol: str
    winding: int
    index: int
    passed: bool

class ClassicalSection(_Section):
    rows: list[IndexEntry]
    additivity_ok: bool
    additivity_pairs: int

class SiegelAgreementEntry(_Section):
    m: int
    samples: int
    agreement: float

class SiegelSection(_Section):
    u_dim: Optional[int] = None
    v_dim: Optional[int] = None
    positivity_ok: Optional[bool] = None
    positivity_trials: int = 0
    positivity_witness: Optional[list[float]] = None
    agreement: list[SiegelAgreementEntry] = []
    extreme_samples: int = 0
    extreme_agree: int = 0

class AnalysisReport(_Section):
    report_version: Literal[1] = 1
    command: str
    seed: int = 0
    cone: Optional[ConeSection] = None
    stratification: Optional[StratificationSection] = None
    incidence: Optional[list[IncidenceRow]] = None
    smoothness: Optional[SmoothnessSection] = None
    pair_geometry: Optional[PairGeometrySection] = None
    complex: Optional[ComplexSection] = None
    metric: Optional[MetricSection] = None
    classical: Optional[ClassicalSection] = None
    siegel: Optional[SiegelSection] = None
    checks: list[CheckOutcome] = []
    notes: list[str] = []

    def add_check(self, name: str, passed: bool, instances: int, detail: str = ""):
        if not passed:
            logger.warning("check %s failed on %d instances %s", name, instances, detail)
        self.checks.append(CheckOutcome(name=name, passed=bool(passed), instances=instances, detail=detail))

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


## Markdown ##

def _table(header: list[str], rows: list[list]) -> list[str]:
    out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    out += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return out

def _keys(keys: list[FaceKey]) -> str:
    return " ".join("{" + ",".join(map(str, k)) + "}" for k in keys)

def _md_cone(s: ConeSection) -> list[str]:
    out = [f"kind: {s.kind}, ambient dimension {s.ambient_dim}, pointed {s.pointed}, solid {s.solid}"]
    if s.generators:
        out += ["", "generators: " + "; ".join("(" + ", ".join(g) + ")" for g in s.generators)]
    if s.inequalities:
        out += ["", "inequalities: " + "; ".join("(" + ", ".join(a) + ")" for a in s.inequalities)]
    return out

def _md_stratification(s: StratificationSection) -> list[str]:
    sizes = ["continuum" if x is None else x for x in s.stratum_sizes]
    rows = [[j, s.dims[len(s.dims) - 1 - j], sizes[j], s.fibre_dims[j],
             _keys(s.strata[j]) if s.strata else ""] for j in range(len(sizes))]
    return [f"face dimensions {s.dims}, facially compact {s.facially_compact}", ""] + \
        _table(["j", "face dim", "size", "fibre dim", "faces"], rows)

def _md_incidence(rows: list[IncidenceRow]) -> list[str]:
    return _table(["j", "pairs", "ξ onto", "η onto", "ξ image modular"],
                  [[r.j, r.pairs, r.xi_surjective, r.eta_surjective, r.xi_image_modular] for r in rows])

def _md_smoothness(s: SmoothnessSection) -> list[str]:
    out = [f"locally smooth: {s.locally_smooth} ({s.instances} instances)"]
    if s.witnesses:
        out += ["", "witnesses: " + "; ".join(_keys(w) for w in s.witnesses)]
    return out

def _md_geometry(s: PairGeometrySection) -> list[str]:
    out = [f"decomposition holds on {s.decomposition_passes} of {s.pairs_checked} pairs"]
    if s.embedding_injective is not None:
        out.append(f"embedding injective: {s.embedding_injective}")
    if s.tangent_fibre_ok is not None:
        out.append(f"tangent fibre check: {s.tangent_fibre_ok}")
    if s.max_residual is not None:
        out.append(f"max orthogonality residual: {s.max_residual:.3e}")
    if s.tangent_probe_residual is not None:
        out.append(f"tangent probe residual: {s.tangent_probe_residual:.3e}")
    out += ["", "dim E_1/2 observed: " + ", ".join(f"j={j}: {v}" for j, v in s.half_space_dims.items()), ""]
    out += _table(["j", "containment", "shifted index", "observed", "agree", "matches"],
                  [[r.j, r.containment_value, r.shifted_index_value, r.observed, r.values_agree,
                    r.observed_matches] for r in s.dimension_formula])
    out.append("")
    out.append(f"dimension formula discrepancy: {s.dimension_formula_discrepancy}")
    if s.rows:
        out += [""] + _table(["j", "E", "F", "e_F ray", "dim E_1/2", "ok"],
                             [[r.j, _keys([r.E]), _keys([r.F]), "(" + ", ".join(r.e_ray) + ")",
                               r.half_space_dim, r.decomposition_ok] for r in s.rows])
    return out

def _md_complex(s: ComplexSection) -> list[str]:
    out = [f"ranks {s.ranks}, Euler characteristic {s.euler_characteristic}",
           f"∂∘∂ = 0: {s.boundary_squared_zero}, exact: {s.exact}, betti {s.betti}, torsion {s.torsion}"]
    if s.shuffled_exact is not None:
        out.append(f"exact after reordering cells: {s.shuffled_exact}")
    for j, D in enumerate(s.boundaries, start=1):
        out += ["", f"D_{j} = {D}"]
    out += ["", f"K-theory degrees alternate: {s.parity_alternates}", ""]
    out += _table(["j", "rank", "fibre dim", "degree"], [[r.j, r.rank, r.fibre_dim, r.degree] for r in s.parity])
    return out

def _md_metric(s: MetricSection) -> list[str]:
    out = [f"tolerance {s.tolerance}, {s.samples_per_dim} samples per angle"]
    if s.ray_formula_error is not None:
        out.append(f"ray formula error over {s.ray_formula_pairs} pairs: {s.ray_formula_error:.3e}")
    if s.polarity:
        out += [""] + _table(["A", "B", "h", "h dual", "gap", "ok"],
                             [[p.A, p.B, f"{p.h_primal:.6f}", f"{p.h_dual:.6f}", f"{p.gap:.2e}", p.ok]
                              for p in s.polarity])
    if s.lipschitz:
        out += [""] + _table(["E", "checked", "skipped", "max violation", "ok"],
                             [[l.E, l.checked, l.skipped, f"{l.max_violation:.2e}", l.ok] for l in s.lipschitz])
    return out

def _md_classical(s: ClassicalSection) -> list[str]:
    out = _table(["symbol", "winding", "index", "index = -winding"],
                 [[r.symbol, r.winding, r.index, r.passed] for r in s.rows])
    out += ["", f"winding additive on {s.additivity_pairs} pairs: {s.additivity_ok}"]
    return out

def _md_siegel(s: SiegelSection) -> list[str]:
    out = []
    if s.positivity_ok is not None:
        out.append(f"K-positivity of B over {s.positivity_trials} trials: {s.positivity_ok}")
        if s.positivity_witness is not None:
            out.append(f"witness u = {s.positivity_witness}")
    for a in s.agreement:
        out.append(f"m = {a.m}: Lorentz membership agreement {a.agreement:.4f} on {a.samples} samples")
    if s.extreme_samples:
        out.append(f"extremality agrees on {s.extreme_agree} of {s.extreme_samples} boundary samples")
    return out

_SECTIONS = [("cone", "Cone", _md_cone), ("stratification", "Stratification", _md_stratification),
             ("incidence", "Incidence", _md_incidence), ("smoothness", "Smoothness", _md_smoothness),
             ("pair_geometry", "Pair geometry", _md_geometry), ("complex", "Index complex", _md_complex),
             ("metric", "Metric", _md_metric), ("classical", "Classical anchor", _md_classical),
             ("siegel", "Siegel", _md_siegel)]

def _markdown(r: AnalysisReport) -> str:
    title = f"# whindex {r.command}" + (f": {r.cone.name}" if r.cone else "")
    out = [title, "", f"report version {r.report_version}, seed {r.seed}"]
    for attr, heading, render in _SECTIONS:
        section = getattr(r, attr)
        if section is None:
            # analyses without --metric still show where the metric suite goes
            if attr == "metric" and r.stratification is not None:
                out += ["", f"## {heading}", "", "not requested"]
            continue
        out += ["", f"## {heading}", ""] + render(section)
    out += ["", "## Checks", ""]
    out += _table(["check", "passed", "instances", "detail"],
                  [[c.name, c.passed, c.instances, c.detail] for c in r.checks])
    if r.notes:
        out += ["", "## Notes", ""] + [f"- {n}" for n in r.notes]
    return "\n".join(out) + "\n"

def report_emit(r: AnalysisReport, fmt: str = "json") -> str:
    if fmt == "json":
        return r.model_dump_json(indent=2) + "\n"
    if fmt == "markdown":
        return _markdown(r)
    raise ValueError(f"unknown report format {fmt!r}")
