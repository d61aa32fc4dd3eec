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

# Exception hierarchy shared by the library and the CLI.
# Every error knows the process exit code the CLI should use for it.


class WhIndexError(Exception):
    exit_code = 3


# Malformed or inconsistent user input (documents, symbols, flags)
class InputError(WhIndexError):
    exit_code = 1

    # @param path: the field path inside the input document, if any
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


# A recorded property check failed; raised after the report is written
class PropertyViolation(WhIndexError):
    exit_code = 2

    def __init__(self, failed: list[str]):
        self.failed = failed
        super().__init__("property checks failed: " + ", ".join(failed))


## Geometry errors: raised by library operations ##


class GeometryError(WhIndexError):
    pass


class NotPointedError(GeometryError):
    pass


class NotSolidError(GeometryError):
    pass


class ZeroVectorError(GeometryError):
    pass


class DependentColumnsError(GeometryError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class FaceNotInLatticeError(GeometryError):
    pass


class StratumIndexError(GeometryError):
    pass


# F⊥ ∩ E^⊛ is not a single ray
class RayDegeneracyError(GeometryError):
    def __init__(self, dim: int, message: str = ""):
        self.dim = dim
        super().__init__(message or f"relative dual face has dimension {dim}, expected 1")


class NonConsecutiveDimsError(GeometryError):
    pass


class BoundaryConditionError(GeometryError):
    pass


class InfiniteStratumError(GeometryError):
    pass


class MetricRegimeError(GeometryError):
    pass


class NotInConeError(GeometryError):
    pass


## Classical Toeplitz errors ##


class NotFredholmError(GeometryError):
    pass


class SectionTooSmallError(GeometryError):
    pass


class UnstableSectionError(GeometryError):
    pass
