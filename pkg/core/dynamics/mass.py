"""
Frozen Galerkin mass matrix with a cached LU factorization
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from core.dynamics.strains import check_ctrl
from core.errors import DimensionError, ModelAssemblyError
from core.models.dlo_models import DloProperties
from core.spline.sample_grid import SampleGrid

logger = logging.getLogger(__name__)

# Pivots below this fraction of the largest pivot mean M is numerically singular
PIVOT_RTOL = 1e-14
SPD_PROBES = 4


@dataclass(frozen=True)
class MassOperator:
    """M over the flattened (n_u, 4) DOFs; factorized on the free DOFs only

    Pinned DOFs carry zero velocity and zero momentum, so p ↔ q̇ is the
    restriction of M to the free block.
    """
    matrix_M: np.ndarray
    free_mask: np.ndarray
    factorization: Tuple[np.ndarray, np.ndarray]
    free_block: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix_M.shape[0]

    def _check(self, vector: np.ndarray) -> np.ndarray:
        vector = np.asarray(vector, dtype=float).reshape(-1)
        if vector.size != self.size:
            raise DimensionError(f"expected {self.size} entries, got {vector.size}")
        return vector

    def to_velocities(self, momenta: np.ndarray) -> np.ndarray:
        """q̇ = M⁻¹p on the free DOFs, 0 elsewhere"""
        p = self._check(momenta)
        v = np.zeros_like(p)
        v[self.free_mask] = lu_solve(self.factorization, p[self.free_mask])
        return v

    def to_momenta(self, velocities: np.ndarray) -> np.ndarray:
        """p = M·q̇ on the free DOFs, 0 elsewhere"""
        v = self._check(velocities)
        p = np.zeros_like(v)
        p[self.free_mask] = self.free_block @ v[self.free_mask]
        return p

    def kinetic_energy(self, momenta: np.ndarray) -> float:
        p = self._check(momenta)
        return 0.5 * float(p @ self.to_velocities(p))


def generalized_density(props: DloProperties) -> np.ndarray:
    """J = diag(μ, μ, μ, I)"""
    mu = props.linear_density_mu
    return np.diag([mu, mu, mu, props.polar_inertia_I])


def mass_matrix(grid: SampleGrid, props: DloProperties, initial_ctrl: np.ndarray,
                free_mask: Optional[np.ndarray] = None) -> MassOperator:
    """Assemble M_ij = ∫ b_i b_j J ‖r′‖ du at initial_ctrl and factorize it"""
    ctrl = check_ctrl(grid, initial_ctrl)
    n_dofs = 4 * grid.basis.n_u
    if free_mask is None:
        free_mask = np.ones(n_dofs, dtype=bool)
    free_mask = np.array(free_mask, dtype=bool).reshape(-1)
    if free_mask.size != n_dofs:
        raise DimensionError(f"free mask must have {n_dofs} entries, got {free_mask.size}")
    if not free_mask.any():
        raise ModelAssemblyError("every DOF is pinned")

    speed = np.linalg.norm(grid.matrix(1) @ ctrl[:, :3], axis=1)
    b0 = grid.matrix(0)
    gram = b0.T @ ((grid.weights * speed)[:, None] * b0)
    gram = 0.5 * (gram + gram.T)
    matrix = np.kron(gram, generalized_density(props))

    free_block = matrix[np.ix_(free_mask, free_mask)]
    if not np.all(np.isfinite(free_block)):
        raise ModelAssemblyError("mass matrix has non-finite entries")
    lu, piv = lu_factor(free_block, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= PIVOT_RTOL * pivots.max():
        ratio = pivots.min() / pivots.max() if pivots.max() > 0 else 0.0
        raise ModelAssemblyError(
            f"mass matrix is singular (pivot ratio {ratio:.3e}); "
            "check for coincident control points"
        )

    rng = np.random.default_rng(0)
    for _ in range(SPD_PROBES):
        probe = rng.standard_normal(free_block.shape[0])
        if not probe @ free_block @ probe > 0:
            raise ModelAssemblyError("mass matrix is not positive definite")

    matrix.setflags(write=False)
    free_block.setflags(write=False)
    free_mask.setflags(write=False)
    logger.info(f"Mass matrix assembled: {n_dofs} DOFs, {int(free_mask.sum())} free")
    return MassOperator(matrix_M=matrix, free_mask=free_mask, factorization=(lu, piv),
                        free_block=free_block)


def accelerations(mass: MassOperator, total_force: np.ndarray) -> np.ndarray:
    """Solve M·q̈ = F with the cached factors"""
    return mass.to_velocities(total_force)


def to_momenta(mass: MassOperator, velocities: np.ndarray) -> np.ndarray:
    return mass.to_momenta(velocities)


def to_velocities(mass: MassOperator, momenta: np.ndarray) -> np.ndarray:
    return mass.to_velocities(momenta)
