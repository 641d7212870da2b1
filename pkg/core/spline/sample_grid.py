"""
Precomputed basis-derivative matrices on uniform sample points
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.errors import InvalidArgumentError
from core.spline.basis import MAX_DERIVATIVE, SplineBasis, eval_basis_all


@dataclass(frozen=True)
class SampleGrid:
    """n_s uniform samples over [0, L] with b_i^(j)(u_k) cached for j = 0..3"""
    basis: SplineBasis
    n_s: int
    u_values: np.ndarray
    basis_matrices: Tuple[np.ndarray, ...]
    weights: np.ndarray  # composite trapezoidal weights

    @property
    def du(self) -> float:
        return self.basis.length_L / (self.n_s - 1)

    def matrix(self, deriv_order: int) -> np.ndarray:
        return self.basis_matrices[deriv_order]

    def integrate(self, integrand: np.ndarray) -> float:
        """Trapezoidal ∫₀ᴸ f du of per-sample values"""
        return float(self.weights @ integrand)


def trapezoid_weights(n_s: int, length_L: float) -> np.ndarray:
    weights = np.full(n_s, length_L / (n_s - 1))
    weights[[0, -1]] *= 0.5
    return weights


def build_sample_grid(basis: SplineBasis, n_s: int) -> SampleGrid:
    """Evaluate every basis derivative once on n_s equally spaced points"""
    if n_s < 2:
        raise InvalidArgumentError(f"n_s must be >= 2, got {n_s}")

    u_values = np.linspace(0.0, basis.length_L, n_s)
    stacked = np.stack([eval_basis_all(basis, u, MAX_DERIVATIVE) for u in u_values], axis=1)
    matrices = []
    for j in range(MAX_DERIVATIVE + 1):
        m = np.ascontiguousarray(stacked[j])
        m.setflags(write=False)
        matrices.append(m)

    weights = trapezoid_weights(n_s, basis.length_L)
    for arr in (u_values, weights):
        arr.setflags(write=False)
    return SampleGrid(
        basis=basis,
        n_s=n_s,
        u_values=u_values,
        basis_matrices=tuple(matrices),
        weights=weights,
    )
