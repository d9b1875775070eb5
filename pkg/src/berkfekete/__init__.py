"""Fekete sums, Berkovich kernels and their upper bounds on the projective line."""
from .berkovich import INF, Disk, chordal, gauss_point, hsia, kernel_can, small_metric
from .errors import (BerkFeketeError, ConfigurationError, MissingModulusError,
                     NewtonPolygonError, NotSquarefreeError, PreconditionError,
                     QuadratureWarning, UnsupportedModeError)
from .potential import Divisor, EnergyValue, Weight, fekete_sum, g0_weight, zero_weight
from .scalars import ARCH, FieldMode, PAdicMag

__all__ = [
    "INF", "Disk", "chordal", "gauss_point", "hsia", "kernel_can", "small_metric",
    "BerkFeketeError", "ConfigurationError", "MissingModulusError", "NewtonPolygonError",
    "NotSquarefreeError", "PreconditionError", "QuadratureWarning", "UnsupportedModeError",
    "Divisor", "EnergyValue", "Weight", "fekete_sum", "g0_weight", "zero_weight",
    "ARCH", "FieldMode", "PAdicMag",
]

__version__ = "0.1.0"
