"""
Tests for strains, energies, forces and the mass operator
"""
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings as hyp_settings, strategies as st
from scipy.spatial.transform import Rotation

from conftest import NO_GRAVITY, SOFT, make_config
from core.dynamics.energy import (
    conservative_gradient,
    elastic_forces,
    gravity_energy,
    grad_potential,
    potential_energy,
    spring_energy,
)
from core.dynamics.mass import accelerations, mass_matrix
from core.dynamics.model import DloModel, hamiltonian
from core.dynamics.strains import compute_strains, stiffness_matrix, strain_energy
from core.errors import (
    DegenerateCurveError,
    DimensionError,
    InvalidArgumentError,
    ModelAssemblyError,
)
from core.models.dlo_models import DloProperties, DloState
from core.scenarios.builder import build_scenario, external_force_at, initial_state
from core.spline.basis import build_basis
from core.spline.sample_grid import build_sample_grid


def test_stiffness_matrix(aluminium):
    h = stiffness_matrix(aluminium)
    area = math.pi * 1e-6
    assert h[0, 0] == pytest.approx(area * 69e9, rel=1e-12)
    assert h[0, 0] == pytest.approx(216769.9, rel=1e-6)
    assert h[1, 1] == pytest.approx(area * 26e9 * 5e-7, rel=1e-12)
    assert h[2, 2] == pytest.approx(h[0, 0] * 2.5e-7, rel=1e-12)
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0


def test_derived_properties(aluminium):
    assert aluminium.linear_density_mu == pytest.approx(2700 * math.pi * 1e-6)
    assert aluminium.polar_inertia_I == pytest.approx(aluminium.linear_density_mu * 4e-6 / 8)
    np.testing.assert_array_equal(aluminium.plastic_strain(5), np.zeros((5, 3)))


def test_invalid_properties():
    with pytest.raises(InvalidArgumentError):
        DloProperties(young_E=-1.0)
    with pytest.raises(DimensionError):
        DloProperties(plastic_strain_eps0=np.zeros((5, 2)))


def test_straight_rod_is_strain_free(grid9, straight9):
    strains = compute_strains(grid9, straight9)
    np.testing.assert_allclose(strains.eps_s, 0.0, atol=1e-13)
    np.testing.assert_array_equal(strains.eps_b, 0.0)
    np.testing.assert_array_equal(strains.gamma, 0.0)
    assert strains.degenerate.all()
    assert len(strains.samples()) == 101


def test_uniform_stretch(grid9, straight9):
    stretched = straight9.copy()
    stretched[:, 0] *= 1.1
    strains = compute_strains(grid9, stretched)
    np.testing.assert_allclose(strains.eps_s, -0.1, atol=1e-12)
    assert strains.sample(50).eps_s == pytest.approx(-0.1)


def test_circle_curvature():
    radius = 0.5
    basis = build_basis(19, 2.0)
    grid = build_sample_grid(basis, 201)
    angle = grid.u_values / radius
    points = np.column_stack([radius * np.cos(angle), radius * np.sin(angle), np.zeros_like(angle)])
    ctrl = np.zeros((19, 4))
    ctrl[:, :3] = np.linalg.lstsq(grid.matrix(0), points, rcond=None)[0]

    strains = compute_strains(grid, ctrl)
    middle = slice(40, 161)
    np.testing.assert_allclose(strains.eps_b[middle], 1.0 / radius, rtol=0.02)
    np.testing.assert_allclose(strains.eps_s[middle], 0.0, atol=0.01)
    np.testing.assert_allclose(strains.gamma, 0.0, atol=1e-12)
    assert not strains.degenerate[middle].any()


def test_cusp_raises(grid9):
    with pytest.raises(DegenerateCurveError):
        compute_strains(grid9, np.zeros((9, 4)))


def test_wrong_ctrl_shape(grid9):
    with pytest.raises(DimensionError):
        compute_strains(grid9, np.zeros((8, 4)))


def _finite_difference_gradient(energy, ctrl, h=1e-6):
    grad = np.zeros(ctrl.size)
    flat = ctrl.reshape(-1)
    for k in range(flat.size):
        up, down = flat.copy(), flat.copy()
        up[k] += h
        down[k] -= h
        grad[k] = (energy(up.reshape(ctrl.shape)) - energy(down.reshape(ctrl.shape))) / (2 * h)
    return grad


@pytest.mark.parametrize("props", [
    DloProperties(**SOFT),
    DloProperties(**SOFT, diameter_D=0.05),
    DloProperties(**SOFT, plastic_strain_eps0=np.tile([0.01, 0.1, 0.5], (41, 1))),
], ids=["soft", "thick", "plastic"])
def test_potential_gradient_matches_finite_differences(props, curved9):
    grid = build_sample_grid(build_basis(9, 2.0), 41)
    scenario = build_scenario("gravity_only", 9, 2.0, {"spring_Kx": 2.0})

    analytic = conservative_gradient(grid, props, curved9, scenario).reshape(-1)
    numeric = _finite_difference_gradient(
        lambda q: potential_energy(grid, props, q, scenario), curved9
    )
    scale = np.max(np.abs(analytic))
    np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-8 * scale)


def test_elastic_forces_vanish_at_rest(grid9, soft, straight9):
    np.testing.assert_allclose(elastic_forces(grid9, soft, straight9), 0.0, atol=1e-9)


def test_elastic_forces_are_translation_invariant(grid9, soft, curved9):
    forces = elastic_forces(grid9, soft, curved9).reshape(9, 4)
    scale = np.max(np.abs(forces))
    np.testing.assert_allclose(forces[:, :3].sum(axis=0), 0.0, atol=1e-10 * scale)
    shifted = curved9 + np.array([0.3, -0.2, 0.1, 0.0])
    assert strain_energy(grid9, soft, compute_strains(grid9, shifted)) == pytest.approx(
        strain_energy(grid9, soft, compute_strains(grid9, curved9)), rel=1e-10
    )


def test_gravity_energy_of_lowered_rod(grid9, soft, straight9):
    gravity = (0.0, 0.0, -9.81)
    strains = compute_strains(grid9, straight9)
    assert gravity_energy(grid9, soft, straight9, strains, gravity) == 0.0

    lowered = straight9.copy()
    lowered[:, 2] -= 0.1
    value = gravity_energy(grid9, soft, lowered, compute_strains(grid9, lowered), gravity)
    assert value == pytest.approx(-soft.linear_density_mu * 9.81 * 0.1 * 2.0, rel=1e-12)
    assert gravity_energy(grid9, soft, lowered, strains, NO_GRAVITY) == 0.0


def test_spring_energy(straight9):
    scenario = build_scenario("gravity_only", 9, 2.0, {"spring_Kx": 2.0})
    assert spring_energy(scenario, straight9) == 0.0
    pulled = straight9.copy()
    pulled[0, 0] -= 0.05
    pulled[-1, 0] += 0.05
    assert spring_energy(scenario, pulled) == pytest.approx(5e-3)


def test_point_force_distribution(grid9, straight9, soft):
    scenario = build_scenario("sinusoidal_center", 9, 2.0, {"gravity": NO_GRAVITY, "spring_Kx": 2.0})
    load = external_force_at(scenario, grid9, 0.5).reshape(9, 4)
    assert load[:, 1].sum() == pytest.approx(1.0)
    np.testing.assert_array_equal(load[:, [0, 2, 3]], 0.0)
    np.testing.assert_allclose(external_force_at(scenario, grid9, 0.0), 0.0, atol=1e-15)

    grad = grad_potential(grid9, soft, straight9, scenario, 0.5)
    np.testing.assert_allclose(grad, -load.reshape(-1), atol=1e-9)


def test_mass_matrix_structure(grid9, aluminium, straight9):
    mass = mass_matrix(grid9, aluminium, straight9)
    m = mass.matrix_M
    assert m.shape == (36, 36)
    np.testing.assert_array_equal(m, m.T)
    mu, inertia = aluminium.linear_density_mu, aluminium.polar_inertia_I
    assert m[0::4, 0::4].sum() == pytest.approx(mu * 2.0, rel=1e-10)
    np.testing.assert_allclose(m[3::4, 3::4], inertia / mu * m[0::4, 0::4], rtol=1e-12)
    np.testing.assert_array_equal(m[0::4, 1::4], 0.0)

    velocities = np.random.default_rng(1).standard_normal(36)
    np.testing.assert_allclose(accelerations(mass, m @ velocities), velocities, rtol=1e-8, atol=1e-10)
    assert mass.kinetic_energy(m @ velocities) == pytest.approx(0.5 * velocities @ m @ velocities)
    with pytest.raises(ValueError):
        mass.matrix_M[0, 0] = 1.0


def test_pinned_dofs_carry_no_velocity(grid9, soft, straight9):
    scenario = build_scenario("gravity_only", 9, 2.0)
    mask = scenario.free_mask(9)
    mass = mass_matrix(grid9, soft, straight9, mask)
    velocities = mass.to_velocities(np.ones(36))
    np.testing.assert_array_equal(velocities[~mask], 0.0)
    np.testing.assert_array_equal(mass.to_momenta(np.ones(36))[~mask], 0.0)
    assert int((~mask).sum()) == 6


def test_mass_assembly_failures(grid9, soft, straight9):
    with pytest.raises(ModelAssemblyError):
        mass_matrix(grid9, soft, np.zeros((9, 4)))
    with pytest.raises(ModelAssemblyError):
        mass_matrix(grid9, soft, straight9, np.zeros(36, dtype=bool))
    with pytest.raises(DimensionError):
        mass_matrix(grid9, soft, straight9, np.ones(35, dtype=bool))


def test_mass_matrix_does_not_freeze_caller_mask(grid9, soft, straight9):
    mask = np.ones(36, dtype=bool)
    mass_matrix(grid9, soft, straight9, mask)
    mask[0] = False


def test_model_hamiltonian_at_rest():
    config = make_config()
    model = DloModel.from_config(config)
    assert model.mass.size == 36
    assert model.length_scale == 2.0
    assert int((~model.free_mask).sum()) == 6

    start = initial_state(config)
    energy = model.hamiltonian(*start.flat())
    assert energy == pytest.approx(0.0, abs=1e-12)
    assert hamiltonian(model.mass, model.grid, model.props, start, model.scenario) == pytest.approx(
        energy, abs=1e-15
    )


def test_model_gradient_includes_point_load():
    config = make_config("sinusoidal_center", gravity=NO_GRAVITY)
    model = DloModel.from_config(config)
    q, _ = initial_state(config).flat()
    load = external_force_at(config.scenario, model.grid, 0.5)
    np.testing.assert_allclose(model.grad_potential(q, 0.5), -load, atol=1e-9)
    moving = DloState(0.0, initial_state(config).ctrl_q, np.ones((9, 4)))
    assert model.kinetic(moving.flat()[1]) > 0


@hyp_settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_elastic_forces_on_random_configurations(seed, curved9):
    grid = build_sample_grid(build_basis(9, 2.0), 41)
    props = DloProperties(**SOFT, diameter_D=0.02)
    rng = np.random.default_rng(seed)
    ctrl = curved9 + 0.002 * rng.standard_normal(curved9.shape)

    analytic = elastic_forces(grid, props, ctrl)
    numeric = -_finite_difference_gradient(
        lambda q: strain_energy(grid, props, compute_strains(grid, q)), ctrl
    )
    scale = np.max(np.abs(analytic))
    np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-7 * scale)


@hyp_settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(rotvec=st.tuples(*[st.floats(min_value=-3.0, max_value=3.0)] * 3))
def test_strain_energy_is_frame_invariant(rotvec, curved9, grid9, soft):
    rotated = curved9.copy()
    rotated[:, :3] = Rotation.from_rotvec(rotvec).apply(curved9[:, :3])
    before = strain_energy(grid9, soft, compute_strains(grid9, curved9))
    after = strain_energy(grid9, soft, compute_strains(grid9, rotated))
    assert after == pytest.approx(before, rel=1e-9)
