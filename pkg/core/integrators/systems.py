"""
System interface shared by the steppers, and a harmonic oscillator reference system
"""
import math
from typing import Protocol, Tuple

import numpy as np

from core.errors import InvalidArgumentError


class HamiltonianSystem(Protocol):
    """What a stepper needs from a separable Hamiltonian system (flat vectors)"""

    @property
    def free_mask(self) -> np.ndarray: ...

    @property
    def length_scale(self) -> float: ...

    def velocities(self, momenta: np.ndarray) -> np.ndarray: ...

    def momenta(self, velocities: np.ndarray) -> np.ndarray: ...

    def grad_potential(self, q: np.ndarray, t: float) -> np.ndarray: ...

    def kinetic(self, p: np.ndarray) -> float: ...

    def hamiltonian(self, q: np.ndarray, p: np.ndarray, t: float = 0.0) -> float: ...


class HarmonicOscillator:
    """Uncoupled oscillators H = Σ p²/2m + k q²/2; k = 0 is free flight"""

    def __init__(self, mass_m: float = 1.0, stiffness_k: float = 1.0, n_dofs: int = 1,
                 length_scale: float = 1.0):
        if not mass_m > 0:
            raise InvalidArgumentError(f"mass must be positive, got {mass_m!r}")
        if stiffness_k < 0:
            raise InvalidArgumentError(f"stiffness must be non-negative, got {stiffness_k!r}")
        self.mass_m = float(mass_m)
        self.stiffness_k = float(stiffness_k)
        self._free_mask = np.ones(n_dofs, dtype=bool)
        self._length_scale = float(length_scale)

    @property
    def free_mask(self) -> np.ndarray:
        return self._free_mask

    @property
    def length_scale(self) -> float:
        return self._length_scale

    @property
    def omega(self) -> float:
        return math.sqrt(self.stiffness_k / self.mass_m)

    def velocities(self, momenta: np.ndarray) -> np.ndarray:
        return np.asarray(momenta, dtype=float) / self.mass_m

    def momenta(self, velocities: np.ndarray) -> np.ndarray:
        return np.asarray(velocities, dtype=float) * self.mass_m

    def grad_potential(self, q: np.ndarray, t: float) -> np.ndarray:
        return self.stiffness_k * np.asarray(q, dtype=float)

    def kinetic(self, p: np.ndarray) -> float:
        p = np.asarray(p, dtype=float)
        return 0.5 * float(p @ p) / self.mass_m

    def hamiltonian(self, q: np.ndarray, p: np.ndarray, t: float = 0.0) -> float:
        q = np.asarray(q, dtype=float)
        return self.kinetic(p) + 0.5 * self.stiffness_k * float(q @ q)

    def exact(self, q0: np.ndarray, p0: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """Analytic (q, p) at time t"""
        q0 = np.asarray(q0, dtype=float)
        p0 = np.asarray(p0, dtype=float)
        if self.stiffness_k == 0:
            return q0 + t * p0 / self.mass_m, p0.copy()
        w = self.omega
        cos, sin = math.cos(w * t), math.sin(w * t)
        q = q0 * cos + p0 / (self.mass_m * w) * sin
        p = -q0 * self.mass_m * w * sin + p0 * cos
        return q, p
