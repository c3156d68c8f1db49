"""q-numerical radius and range engine."""
from .ascent import AscentConfig
from .boundary import BoundaryTrace, support_function, support_values, trace_boundary
from .exact2x2 import Ellipse2x2, canonical_form_2x2, exact_2x2
from .objective import q_objective
from .oracle import sample_oracle
from .params import QParameter, as_q
from .radius import RadiusEstimate, estimate_radius, scalar_radius

__all__ = [
    "AscentConfig", "BoundaryTrace", "Ellipse2x2", "QParameter", "RadiusEstimate",
    "as_q", "canonical_form_2x2", "estimate_radius", "exact_2x2", "q_objective",
    "sample_oracle", "scalar_radius", "support_function", "support_values",
    "trace_boundary",
]
