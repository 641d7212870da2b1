"""
Simulation driver and diagnostics: runs, energy drift, stable step, convergence order
"""
import dataclasses
import logging
import math
from typing import Iterable, Optional

import numpy as np
from scipy.stats import linregress

from core.dynamics.model import DloModel
from core.errors import InsufficientDataError, InvalidArgumentError
from core.integrators.driver import find_max_stable_step, integrate
from core.integrators.steppers import make_stepper
from core.integrators.systems import HarmonicOscillator
from core.models.dlo_models import (
    ConvergenceResult,
    DloState,
    DriftSummary,
    IntegratorKind,
    SimulationConfig,
    StepConfig,
    Trajectory,
)
from core.scenarios.builder import initial_state

logger = logging.getLogger(__name__)

MIN_DRIFT_RECORDS = 10
DRIFT_ABS_FLOOR = 1e-12
DRIFT_REL_FLOOR = 1e-12
SECULAR_SIGMAS = 3.0


def run_simulation(config: SimulationConfig, model: Optional[DloModel] = None) -> Trajectory:
    """Assemble the model once and integrate the configured horizon"""
    model = model or DloModel.from_config(config)
    trajectory = integrate(
        model,
        initial_state(config),
        config.step,
        config.n_steps,
        config.record_stride,
        config.echo,
    )
    logger.info(
        f"{config.step.integrator_kind.value} run finished: {trajectory.outcome.describe()}, "
        f"{len(trajectory.records)} records, {trajectory.wall_seconds:.3f}s"
    )
    return trajectory


def energy_drift_report(trajectory: Trajectory) -> DriftSummary:
    """Relative Hamiltonian deviation, its linear trend and a bounded/secular verdict"""
    if len(trajectory.records) < MIN_DRIFT_RECORDS:
        raise InsufficientDataError(
            f"drift needs >= {MIN_DRIFT_RECORDS} records, got {len(trajectory.records)}"
        )
    times = trajectory.times
    energies = trajectory.energies
    h0 = energies[0]
    deviation = np.abs(energies - h0)

    kinetic = [r.kinetic for r in trajectory.records]
    if all(k is not None for k in kinetic):
        scale = max(abs(h0), float(np.max(kinetic))) + DRIFT_ABS_FLOOR
    else:
        scale = abs(h0) + DRIFT_ABS_FLOOR
    relative = deviation / scale

    elapsed = times - times[0]
    fit = linregress(elapsed, relative)
    residuals = relative - (fit.intercept + fit.slope * elapsed)
    residual_std = float(np.std(residuals))
    slope = float(fit.slope)
    max_rel = float(np.max(relative))

    secular = (
        slope > 0
        and slope * elapsed[-1] > SECULAR_SIGMAS * residual_std
        and max_rel > DRIFT_REL_FLOOR
    )
    return DriftSummary(
        max_abs_drift=float(np.max(deviation)),
        max_rel_drift=max_rel,
        slope=slope,
        residual_std=residual_std,
        scale=float(scale),
        verdict="secular" if secular else "bounded",
    )


def max_stable_tau(config: SimulationConfig, integrator: "IntegratorKind | str",
                   tau_lo: float, tau_hi: float, iterations: int = 12,
                   probe_duration: Optional[float] = None) -> float:
    """Largest τ for which a probe_duration run of config completes"""
    kind = IntegratorKind.parse(integrator)
    if probe_duration is None:
        probe_duration = config.duration
    if not probe_duration > 0:
        raise InvalidArgumentError(f"probe_duration must be positive, got {probe_duration!r}")

    model = DloModel.from_config(config)
    start = initial_state(config)

    def probe(tau: float) -> bool:
        step = dataclasses.replace(config.step, tau=tau, integrator_kind=kind)
        n_steps = max(1, int(math.floor(probe_duration / tau)))
        trajectory = integrate(model, start, step, n_steps, record_stride=n_steps)
        return trajectory.outcome.completed

    tau = find_max_stable_step(probe, tau_lo, tau_hi, iterations)
    logger.info(f"max stable tau for {kind.value}: {tau:.6g}s")
    return tau


def convergence_study(integrator: "IntegratorKind | str", taus: Iterable[float],
                      horizon: float = 1.0,
                      system: Optional[HarmonicOscillator] = None) -> ConvergenceResult:
    """Global (q, p) error at `horizon` on the oscillator; order is the log-log slope"""
    kind = IntegratorKind.parse(integrator)
    taus = tuple(float(t) for t in taus)
    if len(taus) < 2:
        raise InsufficientDataError("convergence order needs at least two step sizes")
    system = system or HarmonicOscillator()
    q0, p0 = np.array([1.0]), np.array([0.0])
    q_exact, p_exact = system.exact(q0, p0, horizon)

    errors = []
    for tau in taus:
        n_steps = int(round(horizon / tau))
        if n_steps < 1 or not math.isclose(n_steps * tau, horizon, rel_tol=1e-9):
            raise InvalidArgumentError(f"tau={tau!r} does not divide horizon={horizon!r}")
        state = DloState(time_t=0.0, ctrl_q=q0, momenta_p=p0)
        stepper = make_stepper(StepConfig(tau=tau, integrator_kind=kind), system)
        for _ in range(n_steps):
            state, _ = stepper.step(state, with_energy=False)
        q_err = np.linalg.norm(state.ctrl_q - q_exact)
        p_err = np.linalg.norm(state.momenta_p - p_exact)
        errors.append(float(np.hypot(q_err, p_err)))

    fit = linregress(np.log(taus), np.log(errors))
    return ConvergenceResult(
        integrator=kind.value,
        taus=taus,
        errors=tuple(errors),
        order=float(fit.slope),
    )
