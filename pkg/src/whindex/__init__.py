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

from .classicwh import (LaurentSymbol, classical_corpus, index_theorem_check, toeplitz_index,
                        winding_additivity, winding_number)
from .conemetric import (MetricConfig, excess, hausdorff_h, lipschitz_probe, polarity_isometry_check,
                         ray_distance)
from .curvedcones import (LorentzCone, SiegelCone, SiegelData, k_positivity_check, lorentz_as_siegel,
                          lorentz_membership, siegel_is_extreme, siegel_membership)
from .errors import GeometryError, InputError, PropertyViolation, WhIndexError
from .indexcomplex import (ChainComplex, build_cellular_complex, euler_characteristic, homology,
                           k_parity_table)
from .parser import ConeDocument, parse_cone
from .polycone import (Cone, Face, FaceLattice, double_description, dual_cone, dual_face,
                       face_lattice, project_onto_cone)
from .ratlin import RationalMatrix, nullspace, orthogonal_complement, rank, smith_normal_form
from .report import AnalysisReport, report_emit
from .strata import (PairGeometry, Stratification, incidence_space, is_locally_smooth, is_modular,
                     pair_geometry, sigma_fiber, stratify, stratify_lorentz)

__version__ = "0.1.0"
