"""q-numerical radius and range of complex matrices and structured operator matrices."""
from .errors import DimensionMismatch, InvalidRequest, MatrixFormatError, QRadiusError
from .qcore import AscentConfig, QParameter, estimate_radius, exact_2x2, trace_boundary

__version__ = "0.1.0"

__all__ = [
    "AscentConfig", "DimensionMismatch", "InvalidRequest", "MatrixFormatError",
    "QParameter", "QRadiusError", "estimate_radius", "exact_2x2", "trace_boundary",
]
