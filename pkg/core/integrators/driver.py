"""
Fixed-step integration loop and step-size stability search
"""
import logging
import time
from typing import Callable, Optional, Sequence

import numpy as np

from core.errors import IntegrationInstability, InvalidArgumentError
from core.integrators.steppers import make_stepper
from core.integrators.systems import HamiltonianSystem
from core.models.dlo_models import (
    DloState,
    RunOutcome,
    StepConfig,
    Trajectory,
    TrajectoryRecord,
)

logger = logging.getLogger(__name__)


def _record(system: HamiltonianSystem, state: DloState, force_evals: int,
            energy: Optional[float] = None) -> TrajectoryRecord:
    q, p = state.flat()
    kinetic = system.kinetic(p)
    if energy is None:
        energy = system.hamiltonian(q, p, state.time_t)
    return TrajectoryRecord(
        t=state.time_t,
        ctrl_q=np.array(state.ctrl_q, dtype=float),
        energy=energy,
        force_evals=force_evals,
        kinetic=kinetic,
    )


def integrate(system: HamiltonianSystem, state: DloState, step_config: StepConfig,
              n_steps: int, record_stride: int = 1,
              config_echo: Sequence[str] = ()) -> Trajectory:
    """Step n_steps times, recording every record_stride steps

    Instability ends the run early and becomes the trajectory outcome.
    """
    if n_steps < 0:
        raise InvalidArgumentError(f"n_steps must be >= 0, got {n_steps}")
    if record_stride < 1:
        raise InvalidArgumentError(f"record_stride must be >= 1, got {record_stride}")

    stepper = make_stepper(step_config, system)
    trajectory = Trajectory(config_echo=tuple(config_echo))
    trajectory.records.append(_record(system, state, 0))

    started = time.perf_counter()
    try:
        for index in range(1, n_steps + 1):
            recorded = index % record_stride == 0
            state, diagnostics = stepper.step(state, with_energy=recorded)
            if recorded:
                trajectory.records.append(_record(system, state, stepper.force_evals, diagnostics.energy))
    except IntegrationInstability as e:
        logger.warning(f"{step_config.integrator_kind.value} run diverged: {e}")
        trajectory.outcome = RunOutcome(status="unstable", step=e.step, time=e.time)
    trajectory.wall_seconds = time.perf_counter() - started
    trajectory.force_evals = stepper.force_evals
    return trajectory


def find_max_stable_step(probe: Callable[[float], bool], tau_lo: float, tau_hi: float,
                         iterations: int = 20) -> float:
    """Bisect for the largest τ in [tau_lo, tau_hi] with probe(τ) true"""
    if not 0 < tau_lo < tau_hi:
        raise InvalidArgumentError(f"need 0 < tau_lo < tau_hi, got {tau_lo!r}, {tau_hi!r}")
    if not probe(tau_lo):
        raise InvalidArgumentError(f"tau_lo={tau_lo!r} is already unstable")
    if probe(tau_hi):
        return tau_hi

    lo, hi = tau_lo, tau_hi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if probe(mid):
            lo = mid
        else:
            hi = mid
    logger.info(f"Largest stable step in [{tau_lo}, {tau_hi}]: {lo:.6g}")
    return lo
