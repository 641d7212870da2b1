"""
Potential energy of the DLO and its gradient with respect to the control points
"""
import numpy as np

from core.dynamics.strains import (
    StrainField,
    check_ctrl,
    compute_strains,
    strain_energy,
    strain_energy_gradient,
)
from core.models.dlo_models import X, DloProperties, Scenario
from core.scenarios.builder import external_force_at
from core.spline.sample_grid import SampleGrid


def gravity_energy(grid: SampleGrid, props: DloProperties, ctrl: np.ndarray,
                   strains: StrainField, gravity) -> float:
    """-μ∫ (g·r) ‖r′‖ du; with g along -z this is ∫ μ·|g|·z ds"""
    g = np.asarray(gravity, dtype=float)
    if not np.any(g):
        return 0.0
    positions = grid.matrix(0) @ ctrl[:, :3]
    return -props.linear_density_mu * grid.integrate((positions @ g) * strains.speed)


def gravity_gradient(grid: SampleGrid, props: DloProperties, ctrl: np.ndarray,
                     strains: StrainField, gravity) -> np.ndarray:
    grad = np.zeros((grid.basis.n_u, 4))
    g = np.asarray(gravity, dtype=float)
    if not np.any(g):
        return grad
    mu = props.linear_density_mu
    positions = grid.matrix(0) @ ctrl[:, :3]
    height = positions @ g
    w = grid.weights[:, None]
    d_r0 = -mu * strains.speed[:, None] * g[None, :]
    d_r1 = (-mu * height / strains.speed)[:, None] * strains.r1
    grad[:, :3] = grid.matrix(0).T @ (w * d_r0) + grid.matrix(1).T @ (w * d_r1)
    return grad


def spring_energy(scenario: Scenario, ctrl: np.ndarray) -> float:
    """½K_x Σ (x_e − x_e,0)² over the two endpoint control points"""
    if scenario.spring_Kx == 0:
        return 0.0
    first, last = scenario.spring_anchors_x
    stretch = np.array([ctrl[0, X] - first, ctrl[-1, X] - last])
    return 0.5 * scenario.spring_Kx * float(stretch @ stretch)


def spring_gradient(scenario: Scenario, ctrl: np.ndarray) -> np.ndarray:
    grad = np.zeros_like(ctrl, dtype=float)
    first, last = scenario.spring_anchors_x
    grad[0, X] += scenario.spring_Kx * (ctrl[0, X] - first)
    grad[-1, X] += scenario.spring_Kx * (ctrl[-1, X] - last)
    return grad


def potential_energy(grid: SampleGrid, props: DloProperties, ctrl: np.ndarray,
                     scenario: Scenario) -> float:
    """Strain + gravity + endpoint spring energy (J)"""
    ctrl = check_ctrl(grid, ctrl)
    strains = compute_strains(grid, ctrl)
    return (
        strain_energy(grid, props, strains)
        + gravity_energy(grid, props, ctrl, strains, scenario.gravity)
        + spring_energy(scenario, ctrl)
    )


def elastic_forces(grid: SampleGrid, props: DloProperties, ctrl: np.ndarray) -> np.ndarray:
    """P = −∂U_strain/∂q, flattened to 4·n_u"""
    ctrl = check_ctrl(grid, ctrl)
    strains = compute_strains(grid, ctrl)
    return -strain_energy_gradient(grid, props, strains).reshape(-1)


def conservative_gradient(grid: SampleGrid, props: DloProperties, ctrl: np.ndarray,
                          scenario: Scenario) -> np.ndarray:
    """∂U/∂q as an (n_u, 4) array, without external loads"""
    strains = compute_strains(grid, ctrl)
    return (
        strain_energy_gradient(grid, props, strains)
        + gravity_gradient(grid, props, ctrl, strains, scenario.gravity)
        + spring_gradient(scenario, ctrl)
    )


def grad_potential(grid: SampleGrid, props: DloProperties, ctrl: np.ndarray,
                   scenario: Scenario, t: float) -> np.ndarray:
    """∂U/∂q − F_ext(t), flattened; the momentum-update force of every stepper"""
    ctrl = check_ctrl(grid, ctrl)
    grad = conservative_gradient(grid, props, ctrl, scenario).reshape(-1)
    if scenario.external_force is not None:
        grad = grad - external_force_at(scenario, grid, t)
    return grad
