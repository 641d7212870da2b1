"""
Shared fixtures for the simulator test suite
"""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from core.models.dlo_models import DloProperties, SimulationConfig, StepConfig  # noqa: E402
from core.scenarios.builder import build_scenario  # noqa: E402
from core.spline.basis import build_basis, greville_abscissae  # noqa: E402
from core.spline.sample_grid import build_sample_grid  # noqa: E402

# Stiffer in torsion than the soft_cable preset so the twist terms carry weight
SOFT = dict(young_E=5.4e5, shear_G=2.0e5, density_rho=2700.0)
NO_GRAVITY = (0.0, 0.0, 0.0)


@pytest.fixture
def aluminium():
    return DloProperties()


@pytest.fixture
def soft():
    return DloProperties(**SOFT)


@pytest.fixture
def basis9():
    return build_basis(9, 2.0)


@pytest.fixture
def grid9(basis9):
    return build_sample_grid(basis9, 101)


@pytest.fixture
def straight9(basis9):
    """Unit-speed straight rod on the x-axis"""
    ctrl = np.zeros((9, 4))
    ctrl[:, 0] = greville_abscissae(basis9)
    return ctrl


@pytest.fixture
def curved9(straight9, basis9):
    """Smooth helix-like 3D configuration with linear twist"""
    u = greville_abscissae(basis9)
    ctrl = straight9.copy()
    ctrl[:, 0] *= 1.02
    ctrl[:, 1] = 0.1 * np.sin(np.pi * u / 2.0)
    ctrl[:, 2] = 0.1 * np.cos(np.pi * u / 2.0) - 0.1
    ctrl[:, 3] = 0.2 * u
    return ctrl


def make_config(kind="gravity_only", n_u=9, n_s=51, duration=0.2, tau=0.002,
                integrator="symplectic4", props=None, record_stride=1, **overrides):
    """SimulationConfig for tests; soft cable unless props is given"""
    props = props or DloProperties(**SOFT)
    overrides.setdefault("spring_Kx", 2.0)
    scenario = build_scenario(kind, n_u, props.length_L, overrides)
    return SimulationConfig(
        n_u=n_u,
        n_s=n_s,
        duration=duration,
        step=StepConfig(tau=tau, integrator_kind=integrator),
        properties=props,
        scenario=scenario,
        record_stride=record_stride,
    )


@pytest.fixture
def soft_config():
    return make_config()
