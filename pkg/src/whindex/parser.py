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

# Cone documents: the JSON input format of the command line
#
#   {"name": "quadrant2", "ambient_dim": 2, "generators": [["1", "0"], ["0", "1"]]}
#   {"name": "halfplane", "inequalities": [["1", "0"]]}
#   {"builtin": {"lorentz": 3}}
#   {"builtin": {"siegel": {"u_dim": 1, "K": {"generators": [["1"]]}, "B": [[["1"]]]}}}
#
# Rationals are strings ("p/q" or integers) so no float ever enters the
# exact computations.

from pathlib import Path
from typing import Optional, Union
import logging

import numpy as np
from pydantic import (BaseModel, ConfigDict, Field, PositiveInt, ValidationError,
                      field_validator, model_validator)

from .curvedcones import LorentzCone, SiegelCone, SiegelData
from .errors import InputError
from .polycone import Cone, double_description
from .ratlin import parse_rational

logger = logging.getLogger(__name__)

RationalVectorDoc = list[str]

def _check_rationals(vectors: Optional[list[list[str]]]) -> Optional[list[list[str]]]:
    if vectors is None:
        return None
    if len(vectors) == 0:
        raise ValueError("at least one vector is required")
    for v in vectors:
        values = [parse_rational(x) for x in v]
        if all(x == 0 for x in values):
            raise ValueError("zero vectors are not allowed")
    return vectors

def _common_length(vectors: list[list[str]], ambient_dim: Optional[int]) -> int:
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise ValueError(f"vectors of different lengths {sorted(lengths)}")
    n = lengths.pop()
    if ambient_dim is not None and n != ambient_dim:
        raise ValueError(f"vectors of length {n} but ambient_dim is {ambient_dim}")
    if n < 1:
        raise ValueError("vectors must be nonempty")
    return n

# A polyhedral cone given by one of its two representations
class PolyhedralDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ambient_dim: Optional[PositiveInt] = None
    generators: Optional[list[RationalVectorDoc]] = None
    inequalities: Optional[list[RationalVectorDoc]] = None

    @field_validator("generators", "inequalities")
    @classmethod
    def rational_strings(cls, vectors):
        return _check_rationals(vectors)

    @model_validator(mode="after")
    def one_representation(self):
        given = [x for x in (self.generators, self.inequalities) if x is not None]
        if len(given) != 1:
            raise ValueError("exactly one of generators and inequalities is required")
        self.ambient_dim = _common_length(given[0], self.ambient_dim)
        return self

    def to_cone(self, name: str = "") -> Cone:
        return double_description(self.ambient_dim, generators=self.generators,
                                  inequalities=self.inequalities, name=name)

class SiegelDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    u_dim: PositiveInt
    # Either a polyhedral cone or {"lorentz": n}
    K: Union[PolyhedralDoc, dict[str, int]]
    # B[k][i][j]: coefficient of the k-th V-coordinate of B(u, u')
    B: list[list[list[str]]]

    @field_validator("K")
    @classmethod
    def lorentz_k(cls, K):
        if isinstance(K, dict) and (set(K) != {"lorentz"} or K["lorentz"] < 2):
            raise ValueError('K must be a polyhedral cone or {"lorentz": n} with n >= 2')
        return K

    @field_validator("B")
    @classmethod
    def rational_entries(cls, B):
        for mat in B:
            for row in mat:
                for x in row:
                    parse_rational(x)
        return B

    @model_validator(mode="after")
    def b_shape(self):
        # B has one u_dim x u_dim matrix per coordinate of V
        v_dim = self.K["lorentz"] if isinstance(self.K, dict) else self.K.ambient_dim
        if len(self.B) != v_dim:
            raise ValueError(f"B has {len(self.B)} matrices but K lives in dimension {v_dim}")
        for mat in self.B:
            if len(mat) != self.u_dim or any(len(row) != self.u_dim for row in mat):
                raise ValueError(f"each matrix of B must be {self.u_dim} x {self.u_dim}")
        return self

    def to_siegel(self) -> SiegelCone:
        K = LorentzCone(self.K["lorentz"]) if isinstance(self.K, dict) else self.K.to_cone("K")
        B = np.array([[[float(parse_rational(x)) for x in row] for row in mat] for mat in self.B])
        return SiegelCone(SiegelData(self.u_dim, K, B))

class BuiltinDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lorentz: Optional[int] = Field(default=None, ge=2)
    siegel: Optional[SiegelDoc] = None

    @model_validator(mode="after")
    def one_builtin(self):
        if (self.lorentz is None) == (self.siegel is None):
            raise ValueError("builtin needs exactly one of lorentz and siegel")
        return self

class ConeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "cone"
    ambient_dim: Optional[PositiveInt] = None
    generators: Optional[list[RationalVectorDoc]] = None
    inequalities: Optional[list[RationalVectorDoc]] = None
    builtin: Optional[BuiltinDoc] = None

    @field_validator("generators", "inequalities")
    @classmethod
    def rational_strings(cls, vectors):
        return _check_rationals(vectors)

    @model_validator(mode="after")
    def one_description(self):
        given = [x for x in (self.generators, self.inequalities, self.builtin) if x is not None]
        if len(given) != 1:
            raise ValueError("exactly one of generators, inequalities and builtin is required")
        if self.builtin is None:
            self.ambient_dim = _common_length(given[0], self.ambient_dim)
        elif self.builtin.lorentz is not None:
            if self.ambient_dim is not None and self.ambient_dim != self.builtin.lorentz:
                raise ValueError(f"ambient_dim {self.ambient_dim} but lorentz {self.builtin.lorentz}")
            self.ambient_dim = self.builtin.lorentz
        return self

    @property
    def kind(self) -> str:
        if self.builtin is None:
            return "polyhedral"
        return "lorentz" if self.builtin.lorentz is not None else "siegel"

    def to_cone(self) -> Cone:
        return PolyhedralDoc(ambient_dim=self.ambient_dim, generators=self.generators,
                             inequalities=self.inequalities).to_cone(self.name)

    def to_lorentz(self) -> LorentzCone:
        return LorentzCone(self.builtin.lorentz)

    def to_siegel(self) -> SiegelCone:
        return self.builtin.siegel.to_siegel()

# Parses a cone document from a file path or from JSON text
def parse_cone(source: Union[str, Path]) -> ConeDocument:
    if isinstance(source, Path) or not source.lstrip().startswith("{"):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror}") from None
    else:
        text = source
    try:
        doc = ConeDocument.model_validate_json(text)
    except ValidationError as e:
        err = e.errors()[0]
        loc = ".".join(str(p) for p in err["loc"])
        raise InputError(err["msg"], loc) from None
    logger.debug("parsed %s cone document %r", doc.kind, doc.name)
    return doc
