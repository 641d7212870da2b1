"""
Boundary conditions, loads and initial state of the shipped scenarios
"""
import logging
from typing import Any, Mapping, Optional

import numpy as np

from core.errors import ConfigError, InvalidArgumentError
from core.models.dlo_models import (
    THETA,
    Y,
    Z,
    DloState,
    ExternalForce,
    Scenario,
    ScenarioKind,
    SimulationConfig,
)
from core.spline.basis import build_basis, eval_basis, greville_abscissae
from core.spline.sample_grid import SampleGrid

logger = logging.getLogger(__name__)

STANDARD_GRAVITY = (0.0, 0.0, -9.81)
ENDPOINT_SPRING_KX = 1.0e4
FORCE_AMPLITUDE_N = 1.0
FORCE_FREQUENCY_HZ = 0.5
FORCE_DIRECTION = (0.0, 1.0, 0.0)

SCENARIO_OVERRIDES = frozenset({
    "gravity",
    "spring_Kx",
    "force_amplitude_N",
    "force_frequency_Hz",
    "force_direction",
    "force_apply_u",
})


def endpoint_constraints(n_u: int) -> frozenset:
    """Endpoints slide along x: their y, z and θ DOFs are pinned"""
    return frozenset(
        (index, component)
        for index in (0, n_u - 1)
        for component in (Y, Z, THETA)
    )


def build_scenario(kind: "ScenarioKind | str", n_u: int, length_L: float = 2.0,
                   overrides: Optional[Mapping[str, Any]] = None) -> Scenario:
    """Gravity-only or sinusoidal-center scenario with optional overrides"""
    try:
        kind = ScenarioKind(kind)
    except ValueError:
        raise ConfigError(f"unknown scenario kind: {kind!r}") from None

    overrides = dict(overrides or {})
    unknown = set(overrides) - SCENARIO_OVERRIDES
    if unknown:
        raise ConfigError(f"unknown scenario overrides: {sorted(unknown)}")

    force = None
    if kind is ScenarioKind.SINUSOIDAL_CENTER:
        apply_u = float(overrides.get("force_apply_u", length_L / 2.0))
        if not 0.0 <= apply_u <= length_L:
            raise ConfigError(f"force_apply_u={apply_u!r} outside [0, {length_L}]")
        try:
            force = ExternalForce(
                amplitude_N=float(overrides.get("force_amplitude_N", FORCE_AMPLITUDE_N)),
                frequency_Hz=float(overrides.get("force_frequency_Hz", FORCE_FREQUENCY_HZ)),
                direction=tuple(overrides.get("force_direction", FORCE_DIRECTION)),
                apply_u=apply_u,
            )
        except InvalidArgumentError as e:
            raise ConfigError(str(e)) from e

    try:
        return Scenario(
            kind=kind.value,
            gravity=tuple(overrides.get("gravity", STANDARD_GRAVITY)),
            spring_Kx=float(overrides.get("spring_Kx", ENDPOINT_SPRING_KX)),
            spring_anchors_x=(0.0, float(length_L)),
            fixed_dofs=endpoint_constraints(n_u),
            external_force=force,
        )
    except InvalidArgumentError as e:
        raise ConfigError(str(e)) from e


def initial_state(config: SimulationConfig) -> DloState:
    """Straight rod on the x-axis from (0,0,0) to (L,0,0), at rest"""
    basis = build_basis(config.n_u, config.properties.length_L)
    ctrl = np.zeros((config.n_u, 4))
    ctrl[:, 0] = greville_abscissae(basis)
    return DloState(time_t=0.0, ctrl_q=ctrl, momenta_p=np.zeros_like(ctrl))


def point_load_weights(scenario: Scenario, grid: SampleGrid) -> np.ndarray:
    """b_i(apply_u) ⊗ direction as an (n_u, 4) array; zeros without a force"""
    weights = np.zeros((grid.basis.n_u, 4))
    force = scenario.external_force
    if force is None:
        return weights
    b = eval_basis(grid.basis, force.apply_u)
    weights[:, :3] = np.outer(b, force.direction)
    return weights


def external_force_at(scenario: Scenario, grid: SampleGrid, t: float,
                      weights: Optional[np.ndarray] = None) -> np.ndarray:
    """Generalized point force at time t, flattened to 4·n_u"""
    force = scenario.external_force
    if force is None:
        return np.zeros(4 * grid.basis.n_u)
    if weights is None:
        weights = point_load_weights(scenario, grid)
    return force.magnitude_at(t) * weights.reshape(-1)
