"""
DLO model: grid, material, scenario and frozen mass operator behind one system interface
"""
import logging
from typing import Optional

import numpy as np

from core.dynamics.energy import conservative_gradient, potential_energy
from core.dynamics.mass import MassOperator, mass_matrix
from core.models.dlo_models import DloProperties, DloState, Scenario, SimulationConfig
from core.scenarios.builder import external_force_at, initial_state, point_load_weights
from core.spline.basis import build_basis
from core.spline.sample_grid import SampleGrid, build_sample_grid

logger = logging.getLogger(__name__)


class DloModel:
    """Separable Hamiltonian system H(q, p) = ½pᵀM⁻¹p + U(q)

    Works on flattened 4·n_u vectors so the steppers stay shape-agnostic.
    """

    def __init__(self, grid: SampleGrid, props: DloProperties, scenario: Scenario,
                 mass: MassOperator):
        self.grid = grid
        self.props = props
        self.scenario = scenario
        self.mass = mass
        self.shape = (grid.basis.n_u, 4)
        self._load_weights = point_load_weights(scenario, grid)

    @classmethod
    def from_config(cls, config: SimulationConfig,
                    initial_ctrl: Optional[np.ndarray] = None) -> "DloModel":
        basis = build_basis(config.n_u, config.properties.length_L)
        grid = build_sample_grid(basis, config.n_s)
        if initial_ctrl is None:
            initial_ctrl = initial_state(config).ctrl_q
        mass = mass_matrix(grid, config.properties, initial_ctrl,
                           config.scenario.free_mask(config.n_u))
        logger.info(f"DLO model ready: n_u={config.n_u}, n_s={config.n_s}, "
                    f"scenario={config.scenario.kind}")
        return cls(grid, config.properties, config.scenario, mass)

    @property
    def free_mask(self) -> np.ndarray:
        return self.mass.free_mask

    @property
    def length_scale(self) -> float:
        return self.props.length_L

    def velocities(self, momenta: np.ndarray) -> np.ndarray:
        return self.mass.to_velocities(momenta)

    def momenta(self, velocities: np.ndarray) -> np.ndarray:
        return self.mass.to_momenta(velocities)

    def grad_potential(self, q: np.ndarray, t: float) -> np.ndarray:
        ctrl = np.reshape(q, self.shape)
        grad = conservative_gradient(self.grid, self.props, ctrl, self.scenario).reshape(-1)
        if self.scenario.external_force is not None:
            grad -= external_force_at(self.scenario, self.grid, t, self._load_weights)
        return grad

    def potential(self, q: np.ndarray) -> float:
        return potential_energy(self.grid, self.props, np.reshape(q, self.shape), self.scenario)

    def kinetic(self, p: np.ndarray) -> float:
        return self.mass.kinetic_energy(p)

    def hamiltonian(self, q: np.ndarray, p: np.ndarray, t: float = 0.0) -> float:
        return self.kinetic(p) + self.potential(q)


def hamiltonian(mass: MassOperator, grid: SampleGrid, props: DloProperties,
                state: DloState, scenario: Scenario) -> float:
    """½pᵀM⁻¹p + U(q) (J)"""
    return mass.kinetic_energy(state.momenta_p) + potential_energy(
        grid, props, state.ctrl_q, scenario
    )
