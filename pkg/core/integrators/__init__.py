"""
Explicit time integrators
"""
from .coefficients import SymplecticCoefficients, fr_coefficients
from .driver import find_max_stable_step, integrate
from .steppers import (
    CountingSystem,
    Stepper,
    ZhaiHistory,
    make_stepper,
    rk4_step,
    symplectic4_step,
    zhai_bootstrap,
    zhai_step,
)
from .systems import HamiltonianSystem, HarmonicOscillator

__all__ = [
    "CountingSystem",
    "HamiltonianSystem",
    "HarmonicOscillator",
    "Stepper",
    "SymplecticCoefficients",
    "ZhaiHistory",
    "find_max_stable_step",
    "fr_coefficients",
    "integrate",
    "make_stepper",
    "rk4_step",
    "symplectic4_step",
    "zhai_bootstrap",
    "zhai_step",
]
