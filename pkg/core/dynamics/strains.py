"""
Stretch, torsion and bending strains of the spline curve and the strain energy
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.errors import DegenerateCurveError, DimensionError
from core.models.dlo_models import DloProperties, StrainSample
from core.spline.sample_grid import SampleGrid

# ‖C‖² < DEGENERACY_RATIO · ‖r′‖⁴ counts as straight: ε_b = γ = 0
DEGENERACY_RATIO = 1e-12


def stiffness_matrix(props: DloProperties) -> np.ndarray:
    """Diagonal element stiffness (D²π/4)·diag(E, G·D²/8, E·D²/16)"""
    d2 = props.diameter_D ** 2
    area = d2 * np.pi / 4.0
    return area * np.diag([props.young_E, props.shear_G * d2 / 8.0, props.young_E * d2 / 16.0])


@dataclass(frozen=True)
class StrainField:
    """Strains and the curve derivatives they were computed from, per sample"""
    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray
    theta1: np.ndarray
    speed: np.ndarray
    cross_C: np.ndarray
    cross_norm2: np.ndarray
    degenerate: np.ndarray
    eps_s: np.ndarray
    eps_t: np.ndarray
    eps_b: np.ndarray
    gamma: np.ndarray

    def __len__(self) -> int:
        return len(self.speed)

    def sample(self, k: int) -> StrainSample:
        return StrainSample(
            eps_s=float(self.eps_s[k]),
            eps_t=float(self.eps_t[k]),
            eps_b=float(self.eps_b[k]),
            cross_C=tuple(float(c) for c in self.cross_C[k]),
            gamma=float(self.gamma[k]),
        )

    def samples(self) -> Tuple[StrainSample, ...]:
        return tuple(self.sample(k) for k in range(len(self)))

    def vector(self) -> np.ndarray:
        """(n_s, 3) strain vectors (ε_s, ε_t, ε_b)"""
        return np.column_stack([self.eps_s, self.eps_t, self.eps_b])


def check_ctrl(grid: SampleGrid, ctrl: np.ndarray) -> np.ndarray:
    ctrl = np.asarray(ctrl, dtype=float)
    if ctrl.ndim == 1 and ctrl.size == 4 * grid.basis.n_u:
        ctrl = ctrl.reshape(grid.basis.n_u, 4)
    if ctrl.shape != (grid.basis.n_u, 4):
        raise DimensionError(f"ctrl must be ({grid.basis.n_u}, 4), got {ctrl.shape}")
    return ctrl


def compute_strains(grid: SampleGrid, ctrl: np.ndarray) -> StrainField:
    """Strain vector at every sample point"""
    ctrl = check_ctrl(grid, ctrl)
    positions = ctrl[:, :3]
    r1 = grid.matrix(1) @ positions
    r2 = grid.matrix(2) @ positions
    r3 = grid.matrix(3) @ positions
    theta1 = grid.matrix(1) @ ctrl[:, 3]

    speed = np.linalg.norm(r1, axis=1)
    if np.any(speed == 0.0):
        k = int(np.flatnonzero(speed == 0.0)[0])
        raise DegenerateCurveError(f"zero tangent at u={grid.u_values[k]!r}")

    cross_C = np.cross(r1, r2)
    cross_norm2 = np.einsum("ij,ij->i", cross_C, cross_C)
    degenerate = cross_norm2 < DEGENERACY_RATIO * speed ** 4
    live = ~degenerate

    eps_b = np.zeros_like(speed)
    gamma = np.zeros_like(speed)
    eps_b[live] = np.sqrt(cross_norm2[live]) / speed[live] ** 3
    gamma[live] = np.einsum("ij,ij->i", cross_C[live], r3[live]) / cross_norm2[live]

    return StrainField(
        r1=r1,
        r2=r2,
        r3=r3,
        theta1=theta1,
        speed=speed,
        cross_C=cross_C,
        cross_norm2=cross_norm2,
        degenerate=degenerate,
        eps_s=1.0 - speed,
        eps_t=theta1 - gamma,
        eps_b=eps_b,
        gamma=gamma,
    )


def strain_energy(grid: SampleGrid, props: DloProperties, strains: StrainField) -> float:
    """½∫ ε_eᵀ H ε_e ‖r′‖ du"""
    h = np.diag(stiffness_matrix(props))
    eps_e = strains.vector() - props.plastic_strain(grid.n_s)
    density = 0.5 * (eps_e ** 2) @ h
    return grid.integrate(density * strains.speed)


def strain_energy_gradient(grid: SampleGrid, props: DloProperties, strains: StrainField) -> np.ndarray:
    """∂U_strain/∂q as an (n_u, 4) array

    Chain rule through r′, r″, r‴ and θ′ per sample, then back through the
    basis-derivative matrices. The variation of the measure ds = ‖r′‖du is
    included so the result is the exact gradient of strain_energy.
    """
    h1, h2, h3 = np.diag(stiffness_matrix(props))
    eps_e = strains.vector() - props.plastic_strain(grid.n_s)
    e_s, e_t, e_b = eps_e[:, 0], eps_e[:, 1], eps_e[:, 2]

    a = strains.r1
    b = strains.r2
    c3 = strains.r3
    s = strains.speed
    cross = strains.cross_C
    live = ~strains.degenerate

    density = 0.5 * (h1 * e_s ** 2 + h2 * e_t ** 2 + h3 * e_b ** 2)
    k_s = s * h1 * e_s
    k_t = s * h2 * e_t
    k_b = s * h3 * e_b

    # ∂f/∂C and ∂f/∂r‴ only exist away from the straight-line degeneracy
    g_cross = np.zeros_like(cross)
    d_r3 = np.zeros_like(c3)
    n2 = strains.cross_norm2[live]
    n = np.sqrt(n2)
    gam = strains.gamma[live]
    g_cross[live] = (
        (k_b[live] / (n * s[live] ** 3))[:, None] * cross[live]
        - (k_t[live] / n2)[:, None] * (c3[live] - 2.0 * gam[:, None] * cross[live])
    )
    d_r3[live] = -(k_t[live] / n2)[:, None] * cross[live]

    bend_stretch = np.where(live, 3.0 * k_b * strains.eps_b / s ** 2, 0.0)
    d_r1 = ((density - k_s) / s - bend_stretch)[:, None] * a + np.cross(b, g_cross)
    d_r2 = np.cross(g_cross, a)
    d_theta1 = k_t

    w = grid.weights[:, None]
    grad = np.zeros((grid.basis.n_u, 4))
    grad[:, :3] = (
        grid.matrix(1).T @ (w * d_r1)
        + grid.matrix(2).T @ (w * d_r2)
        + grid.matrix(3).T @ (w * d_r3)
    )
    grad[:, 3] = grid.matrix(1).T @ (grid.weights * d_theta1)
    return grad
