"""
Clamped cubic B-spline basis over the material coordinate u ∈ [0, L]
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.errors import DimensionError, InvalidArgumentError, OutOfDomainError

logger = logging.getLogger(__name__)

DEGREE = 3
MAX_DERIVATIVE = 3
# Slack for parameters that land a rounding error outside [0, L]
DOMAIN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SplineBasis:
    """Clamped, uniform-interior-knot cubic basis with n_u functions"""
    n_u: int
    length_L: float
    knots: np.ndarray
    degree: int = DEGREE

    def find_span(self, u: float) -> int:
        """Index k with knots[k] <= u < knots[k+1], the last span closed at L"""
        span = int(np.searchsorted(self.knots, u, side="right")) - 1
        return min(max(span, self.degree), self.n_u - 1)

    def check_domain(self, u: float) -> float:
        if not (-DOMAIN_TOLERANCE <= u <= self.length_L * (1.0 + DOMAIN_TOLERANCE) + DOMAIN_TOLERANCE):
            raise OutOfDomainError(f"u={u!r} outside [0, {self.length_L}]")
        return min(max(float(u), 0.0), self.length_L)


def build_basis(n_u: int, length_L: float) -> SplineBasis:
    """Build a clamped cubic basis with uniform interior knots"""
    if n_u < DEGREE + 1:
        raise InvalidArgumentError(f"n_u must be >= {DEGREE + 1}, got {n_u}")
    if not length_L > 0:
        raise InvalidArgumentError(f"length must be positive, got {length_L!r}")

    n_spans = n_u - DEGREE
    interior = np.linspace(0.0, length_L, n_spans + 1)[1:-1]
    knots = np.concatenate([
        np.zeros(DEGREE + 1),
        interior,
        np.full(DEGREE + 1, float(length_L)),
    ])
    knots.setflags(write=False)
    return SplineBasis(n_u=n_u, length_L=float(length_L), knots=knots)


def greville_abscissae(basis: SplineBasis) -> np.ndarray:
    """Knot averages; control x-values here make the curve reproduce x(u) = u"""
    p = basis.degree
    t = basis.knots
    return np.array([t[i + 1:i + p + 1].mean() for i in range(basis.n_u)])


def _basis_derivatives(basis: SplineBasis, span: int, u: float, n_ders: int) -> np.ndarray:
    """Nonzero basis functions on `span` and their derivatives up to n_ders

    Cox-de Boor triangle plus the derivative recurrence; row k holds the k-th
    derivative of b_{span-p} ... b_{span}.
    """
    p = basis.degree
    t = basis.knots
    ndu = np.zeros((p + 1, p + 1))
    left = np.zeros(p + 1)
    right = np.zeros(p + 1)
    ndu[0, 0] = 1.0
    for j in range(1, p + 1):
        left[j] = u - t[span + 1 - j]
        right[j] = t[span + j] - u
        saved = 0.0
        for r in range(j):
            ndu[j, r] = right[r + 1] + left[j - r]
            temp = ndu[r, j - 1] / ndu[j, r]
            ndu[r, j] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        ndu[j, j] = saved

    ders = np.zeros((n_ders + 1, p + 1))
    ders[0, :] = ndu[:, p]

    a = np.zeros((2, p + 1))
    for r in range(p + 1):
        s1, s2 = 0, 1
        a[0, 0] = 1.0
        for k in range(1, n_ders + 1):
            d = 0.0
            rk = r - k
            pk = p - k
            if r >= k:
                a[s2, 0] = a[s1, 0] / ndu[pk + 1, rk]
                d = a[s2, 0] * ndu[rk, pk]
            j1 = 1 if rk >= -1 else -rk
            j2 = k - 1 if r - 1 <= pk else p - r
            for j in range(j1, j2 + 1):
                a[s2, j] = (a[s1, j] - a[s1, j - 1]) / ndu[pk + 1, rk + j]
                d += a[s2, j] * ndu[rk + j, pk]
            if r <= pk:
                a[s2, k] = -a[s1, k - 1] / ndu[pk + 1, r]
                d += a[s2, k] * ndu[r, pk]
            ders[k, r] = d
            s1, s2 = s2, s1

    factor = float(p)
    for k in range(1, n_ders + 1):
        ders[k, :] *= factor
        factor *= p - k
    return ders


def eval_basis_all(basis: SplineBasis, u: float, max_order: int = MAX_DERIVATIVE) -> np.ndarray:
    """All derivative orders 0..max_order at u as a (max_order+1, n_u) array"""
    u = basis.check_domain(u)
    span = basis.find_span(u)
    local = _basis_derivatives(basis, span, u, max_order)
    values = np.zeros((max_order + 1, basis.n_u))
    values[:, span - basis.degree:span + 1] = local
    return values


def eval_basis(basis: SplineBasis, u: float, deriv_order: int = 0) -> np.ndarray:
    """b_i^(j)(u) for every i"""
    if not 0 <= deriv_order <= MAX_DERIVATIVE:
        raise InvalidArgumentError(f"deriv_order must be in 0..{MAX_DERIVATIVE}, got {deriv_order}")
    return eval_basis_all(basis, u, deriv_order)[deriv_order]


def eval_curve(basis: SplineBasis, ctrl: np.ndarray, u: float, deriv_order: int = 0) -> np.ndarray:
    """Σ_i b_i^(j)(u) q_i for an (n_u, 4) control array"""
    ctrl = np.asarray(ctrl, dtype=float)
    if ctrl.ndim != 2 or ctrl.shape[0] != basis.n_u:
        raise DimensionError(f"ctrl must have {basis.n_u} rows, got shape {ctrl.shape}")
    return eval_basis(basis, u, deriv_order) @ ctrl
