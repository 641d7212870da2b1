"""
Cubic B-spline representation of the DLO curve
"""
from .basis import SplineBasis, build_basis, eval_basis, eval_curve, greville_abscissae
from .sample_grid import SampleGrid, build_sample_grid

__all__ = [
    "SplineBasis",
    "SampleGrid",
    "build_basis",
    "build_sample_grid",
    "eval_basis",
    "eval_curve",
    "greville_abscissae",
]
