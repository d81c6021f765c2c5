"""Numerical lab for Legendrian surfaces in S^5 and their Willmore energy."""

from .errors import (
    DegenerateMetric,
    DriftExceeded,
    EvaluationOutsideChart,
    FormatError,
    LegwError,
    NonTangent,
    NotPeriodic,
    OrderTooHigh,
    StepRejected,
)
from .exemplars import (
    SURFACES,
    contact_perturb,
    equatorial_sphere,
    flat_minimal_torus,
    negative_controls,
    perturbed_torus,
)
from .invariants import willmore_energy
from .surface import ImmersionGrid, point_jet, sample_to_grid

__version__ = "0.1.0"

__all__ = [
    "DegenerateMetric",
    "DriftExceeded",
    "EvaluationOutsideChart",
    "FormatError",
    "ImmersionGrid",
    "LegwError",
    "NonTangent",
    "NotPeriodic",
    "OrderTooHigh",
    "SURFACES",
    "StepRejected",
    "contact_perturb",
    "equatorial_sphere",
    "flat_minimal_torus",
    "negative_controls",
    "perturbed_torus",
    "point_jet",
    "sample_to_grid",
    "willmore_energy",
]
