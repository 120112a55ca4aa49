"""Desk-scale empirical checks of the component and VC bounds."""

from .grid import METHOD as GRID_METHOD
from .grid import DisjointSet, fiber_components_2d_estimate
from .shatter import ShatterCertificate, empirical_vc_lower_bound
from .sturm import (
    SturmSequence,
    count_real_roots,
    fiber_components_1d,
    squarefree_part,
    sturm_sequence,
)

__all__ = [
    "GRID_METHOD",
    "DisjointSet",
    "ShatterCertificate",
    "SturmSequence",
    "count_real_roots",
    "empirical_vc_lower_bound",
    "fiber_components_1d",
    "fiber_components_2d_estimate",
    "squarefree_part",
    "sturm_sequence",
]
