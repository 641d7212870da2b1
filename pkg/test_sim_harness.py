"""
Tests for the simulation harness: runs, drift, export, benchmark and error study
"""
from pathlib import Path

import numpy as np
import pytest

from conftest import make_config
from core.errors import ConfigError, HarnessError, InsufficientDataError
from core.harness.export import (
    export_report,
    export_trajectory,
    parse_report_summary,
    parse_trajectory,
    render_report,
    trajectory_columns,
)
from core.harness.resolution import error_grid, interval_edges, station_values, summarize
from core.harness.simulation import energy_drift_report, max_stable_tau, run_simulation
from core.models.config_schema import load_run_config
from core.models.dlo_models import DloProperties, RunOutcome, Trajectory, TrajectoryRecord
from workflows.nodes.benchmark import benchmark, cell_config
from workflows.nodes.error_study import resolution_error_study, variant_config

CONFIG_DIR = Path(__file__).parent / "configs"


def aluminium_config(**kwargs):
    return make_config(props=DloProperties(), spring_Kx=1e4, **kwargs)


def test_stiff_material_is_reported_unstable():
    trajectory = run_simulation(aluminium_config(duration=0.2))
    assert not trajectory.outcome.completed
    assert trajectory.outcome.step >= 1
    assert trajectory.outcome.time == pytest.approx(trajectory.outcome.step * 0.002)


def test_horizon_shorter_than_step_records_initial_state_only():
    trajectory = run_simulation(make_config(duration=0.001, tau=0.002))
    assert trajectory.outcome.completed
    assert len(trajectory.records) == 1
    assert trajectory.force_evals == 0


def test_record_stride():
    trajectory = run_simulation(make_config(duration=0.02, tau=0.002, record_stride=5))
    np.testing.assert_allclose(trajectory.times, [0.0, 0.01, 0.02], atol=1e-12)
    assert trajectory.force_evals == 30


def test_soft_cable_energy_drift():
    trajectory = run_simulation(make_config(duration=2.0, tau=0.001, record_stride=10))
    assert trajectory.outcome.completed
    drift = energy_drift_report(trajectory)
    assert drift.max_rel_drift < 1e-3
    assert drift.scale > 0


@pytest.mark.parametrize("integrator, verdict", [("symplectic4", "bounded"), ("rk4", "secular")])
def test_shipped_gravity_scenario_drift_verdicts(integrator, verdict):
    run = load_run_config(CONFIG_DIR / "scenario1_soft.toml").with_overrides(step__integrator=integrator)
    trajectory = run_simulation(run.to_simulation_config())
    assert trajectory.outcome.completed
    drift = energy_drift_report(trajectory)
    assert drift.verdict == verdict
    if integrator == "rk4":
        assert drift.slope > 0
    else:
        assert drift.max_rel_drift < 5e-3


def test_drift_needs_records():
    trajectory = run_simulation(make_config(duration=0.01, tau=0.002))
    with pytest.raises(InsufficientDataError):
        energy_drift_report(trajectory)


def test_trajectory_export_round_trip(tmp_path):
    config = make_config(duration=0.02, tau=0.002)
    trajectory = run_simulation(config)
    trajectory.config_echo = ("simulation.n_u = 9", "step.tau = 0.002")
    path = export_trajectory(trajectory, tmp_path / "out" / "traj.csv")

    parsed = parse_trajectory(path)
    assert parsed.config_echo == trajectory.config_echo
    assert parsed.force_evals == trajectory.force_evals
    assert parsed.outcome.completed
    np.testing.assert_array_equal(parsed.times, trajectory.times)
    np.testing.assert_array_equal(parsed.energies, trajectory.energies)
    np.testing.assert_array_equal(parsed.positions(), trajectory.positions())

    header = [line for line in path.read_text().splitlines() if not line.startswith("#")][0]
    assert header.split(",") == trajectory_columns(9)
    assert len(trajectory_columns(9)) == 2 + 4 * 9


def test_trajectory_export_is_deterministic(tmp_path):
    trajectory = run_simulation(make_config(duration=0.01, tau=0.002))
    first = export_trajectory(trajectory, tmp_path / "a.csv").read_bytes()
    trajectory.wall_seconds += 1.0
    second = export_trajectory(trajectory, tmp_path / "b.csv").read_bytes()
    assert first == second


def test_unstable_outcome_round_trip(tmp_path):
    record = TrajectoryRecord(t=0.0, ctrl_q=np.zeros((4, 4)), energy=0.0, force_evals=0)
    trajectory = Trajectory(records=[record], outcome=RunOutcome("unstable", 17, 0.034))
    parsed = parse_trajectory(export_trajectory(trajectory, tmp_path / "u.csv"))
    assert parsed.outcome == RunOutcome("unstable", 17, 0.034)


def test_drift_report_file(tmp_path):
    trajectory = run_simulation(make_config(duration=0.05, tau=0.002))
    drift = energy_drift_report(trajectory)
    text = render_report(drift)
    assert text.startswith("# Energy drift")
    summary = parse_report_summary(export_report(drift, tmp_path / "drift.txt"))
    assert summary["verdict"] == drift.verdict
    assert float(summary["max_rel_drift"]) == drift.max_rel_drift


def test_max_stable_tau_stays_in_bracket():
    tau = max_stable_tau(make_config(), "symplectic4", 1e-4, 1e-2, iterations=3, probe_duration=0.05)
    assert 1e-4 <= tau <= 1e-2


def test_cell_config_records_end_state_only():
    config = cell_config(make_config(), "rk4", 0.04)
    assert config.step.integrator_kind.value == "rk4"
    assert config.n_steps == 20
    assert config.record_stride == 20


def test_benchmark_eval_ratio():
    report = benchmark(make_config(), ["symplectic4", "rk4"], [0.02, 0.04], warmup_steps=2, workers=1)
    assert len(report.rows) == 4
    assert all(row.outcome == "completed" for row in report.rows)
    assert report.eval_ratio == pytest.approx(0.75)
    assert set(report.ratios) == {0.02, 0.04}
    assert report.machine
    text = render_report(report)
    assert "[table]" in text and "eval_ratio = 0.75" in text


def test_benchmark_edge_cases():
    report = benchmark(make_config(), ["symplectic4"], [], warmup_steps=2)
    assert report.rows == [] and report.ratios == {} and report.eval_ratio is None
    with pytest.raises(ConfigError):
        benchmark(make_config(), ["leapfrog"], [0.02])


def test_benchmark_reports_unstable_cells():
    report = benchmark(aluminium_config(), ["rk4"], [0.2], warmup_steps=0)
    row = report.rows[0]
    assert row.outcome.startswith("unstable")
    assert row.steps >= 1
    assert row.evals_per_step == pytest.approx(4.0)


def test_error_grid_binning():
    times = np.array([0.0, 0.1, 0.2, 0.6, 1.0])
    reference = np.zeros((5, 2, 3))
    variant = np.zeros((5, 2, 3))
    variant[:, :, 0] = times[:, None]
    grid = error_grid(variant, reference, times, interval_edges(1.0, 2))
    np.testing.assert_allclose(grid, [[0.1, 0.8], [0.1, 0.8]])
    assert np.isnan(error_grid(variant, reference, times, interval_edges(1.0, 4))[0, 1])


def test_summarize_excludes_reference():
    grids = {(9, 51): np.zeros((2, 2)), (5, 51): np.ones((2, 2)), (5, 21): 3 * np.ones((2, 2))}
    by_nu, by_ns, by_t, by_u = summarize(grids, (9, 51))
    assert by_nu == {5: 2.0}
    assert by_ns == {21: 3.0, 51: 1.0}
    np.testing.assert_array_equal(by_t[(9, 51)], [0.0, 0.0])
    assert station_values(2.0)[-1] == 2.0


def test_variant_config_moves_constraints():
    config = variant_config(make_config(), 5, 21)
    assert config.n_u == 5 and config.n_s == 21
    assert (4, 1) in config.scenario.fixed_dofs and (8, 1) not in config.scenario.fixed_dofs


def test_resolution_error_study():
    reference = make_config(duration=0.2, tau=0.001)
    report = resolution_error_study(reference, [5, 9], [21, 51], workers=1)
    assert report.reference == (9, 51)
    assert set(report.grids) == {(5, 21), (5, 51), (9, 21), (9, 51)}
    assert report.excluded == []
    for grid in report.grids.values():
        assert grid.shape == (10, 20)
    np.testing.assert_array_equal(report.grids[(9, 51)], 0.0)
    assert report.grids[(5, 51)].max() > 0
    assert set(report.error_vs_nu) == {5, 9}
    assert set(report.error_vs_ns) == {21, 51}
    assert "Resolution error study" in render_report(report)


def test_resolution_error_study_needs_stable_reference():
    with pytest.raises(HarnessError):
        resolution_error_study(aluminium_config(duration=0.2), [5], [21], workers=1)


def test_resolution_error_trends():
    reference = make_config(n_u=13, n_s=151, duration=1.0, tau=0.0008)
    report = resolution_error_study(reference, [5, 9], [51, 101], workers=1)
    assert report.reference == (13, 151)
    assert report.excluded == []
    assert set(report.error_vs_nu) == {5, 9}
    assert report.error_vs_nu[5] > report.error_vs_nu[9] > 0.0
    coarse, fine = report.error_vs_ns[51], report.error_vs_ns[101]
    assert abs(coarse - fine) < 0.25 * max(coarse, fine)


@pytest.mark.parametrize("n_u_values, n_s_values", [([5, 13], [21]), ([5], [21, 101])])
def test_resolution_error_study_rejects_variants_finer_than_reference(n_u_values, n_s_values):
    with pytest.raises(ConfigError):
        resolution_error_study(make_config(n_u=9, n_s=51), n_u_values, n_s_values, workers=1)


def test_symplectic4_beats_rk4_wall_time():
    report = benchmark(make_config(n_s=101), ["symplectic4", "rk4"], [1.0], warmup_steps=10, workers=1)
    assert all(row.outcome == "completed" for row in report.rows)
    assert report.ratios[1.0] < 1.0
