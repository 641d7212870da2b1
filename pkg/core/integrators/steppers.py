"""
Explicit steppers: fourth-order symplectic composition, classical RK4 and Zhai
"""
import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core.errors import BootstrapRequiredError, IntegrationInstability
from core.integrators.coefficients import SymplecticCoefficients, fr_coefficients
from core.integrators.systems import HamiltonianSystem
from core.models.dlo_models import DloState, IntegratorKind, StepConfig, StepDiagnostics

logger = logging.getLogger(__name__)

FOREST_RUTH = fr_coefficients()
# ‖q‖∞ beyond this multiple of the system length counts as divergence
DIVERGENCE_FACTOR = 1.0e3


class CountingSystem:
    """Proxy that counts grad_potential calls of the wrapped system"""

    def __init__(self, system: HamiltonianSystem):
        self.system = system
        self.evaluations = 0

    def __getattr__(self, name):
        return getattr(self.system, name)

    def grad_potential(self, q: np.ndarray, t: float) -> np.ndarray:
        self.evaluations += 1
        return self.system.grad_potential(q, t)


def _force(system: HamiltonianSystem, q: np.ndarray, t: float) -> np.ndarray:
    """−∂U/∂q + F with pinned DOFs zeroed"""
    return np.where(system.free_mask, -system.grad_potential(q, t), 0.0)


def symplectic4_step(state: DloState, config: StepConfig, system: HamiltonianSystem,
                     coefficients: SymplecticCoefficients = FOREST_RUTH) -> DloState:
    """Drift q += c_k·τ·M⁻¹p, then kick p += d_k·τ·F(q); the d = 0 kick is skipped"""
    tau = config.tau
    q, p = state.flat()
    stage_t = state.time_t
    for c, d in zip(coefficients.c, coefficients.d):
        q = q + c * tau * system.velocities(p)
        stage_t += c * tau
        if d != 0.0:
            p = p + d * tau * _force(system, q, stage_t)
    return state.with_flat(state.time_t + tau, q, p)


def rk4_step(state: DloState, config: StepConfig, system: HamiltonianSystem) -> DloState:
    """Classical Runge-Kutta on (q̇, ṗ) = (M⁻¹p, F(q, t))"""
    tau = config.tau
    half = 0.5 * tau
    t = state.time_t
    q, p = state.flat()

    dq1, dp1 = system.velocities(p), _force(system, q, t)
    q2, p2 = q + half * dq1, p + half * dp1
    dq2, dp2 = system.velocities(p2), _force(system, q2, t + half)
    q3, p3 = q + half * dq2, p + half * dp2
    dq3, dp3 = system.velocities(p3), _force(system, q3, t + half)
    q4, p4 = q + tau * dq3, p + tau * dp3
    dq4, dp4 = system.velocities(p4), _force(system, q4, t + tau)

    q = q + tau / 6.0 * (dq1 + 2.0 * dq2 + 2.0 * dq3 + dq4)
    p = p + tau / 6.0 * (dp1 + 2.0 * dp2 + 2.0 * dp3 + dp4)
    return state.with_flat(t + tau, q, p)


@dataclass(frozen=True)
class ZhaiHistory:
    """Current state plus the acceleration of the previous step"""
    state: DloState
    prev_acc: Optional[np.ndarray] = None


def _acceleration(system: HamiltonianSystem, q: np.ndarray, t: float) -> np.ndarray:
    return system.velocities(_force(system, q, t))


def zhai_bootstrap(state: DloState, config: StepConfig, system: HamiltonianSystem) -> ZhaiHistory:
    """First step by symplectic4, keeping the starting acceleration as history"""
    q, _ = state.flat()
    acc = _acceleration(system, q, state.time_t)
    return ZhaiHistory(state=symplectic4_step(state, config, system), prev_acc=acc)


def zhai_step(history: ZhaiHistory, config: StepConfig, system: HamiltonianSystem) -> ZhaiHistory:
    """q += τv + (½+ψ)τ²a_n − ψτ²a_{n−1};  v += (1+φ)τa_n − φτa_{n−1}"""
    if history.prev_acc is None:
        raise BootstrapRequiredError("zhai_step needs the previous acceleration; call zhai_bootstrap first")
    tau = config.tau
    psi, phi = config.zhai_psi, config.zhai_phi
    state = history.state
    q, p = state.flat()
    v = system.velocities(p)
    acc = _acceleration(system, q, state.time_t)
    prev = history.prev_acc

    q = q + tau * v + (0.5 + psi) * tau ** 2 * acc - psi * tau ** 2 * prev
    v = v + (1.0 + phi) * tau * acc - phi * tau * prev
    new_state = state.with_flat(state.time_t + tau, q, system.momenta(v))
    return ZhaiHistory(state=new_state, prev_acc=acc)


class Stepper:
    """Uniform step(state) -> (state, diagnostics) over the three schemes

    Raises IntegrationInstability once the state stops being finite or
    bounded. The Zhai variant re-bootstraps when handed a state it did
    not produce itself.
    """

    def __init__(self, config: StepConfig, system: HamiltonianSystem,
                 coefficients: SymplecticCoefficients = FOREST_RUTH):
        self.config = config
        self.kind = IntegratorKind.parse(config.integrator_kind)
        self.system = CountingSystem(system)
        self.coefficients = coefficients
        self.step_index = 0
        self._history: Optional[ZhaiHistory] = None

    @property
    def force_evals(self) -> int:
        return self.system.evaluations

    def reset(self) -> None:
        self.step_index = 0
        self._history = None
        self.system.evaluations = 0

    def _advance(self, state: DloState) -> DloState:
        if self.kind is IntegratorKind.SYMPLECTIC4:
            return symplectic4_step(state, self.config, self.system, self.coefficients)
        if self.kind is IntegratorKind.RK4:
            return rk4_step(state, self.config, self.system)
        if self._history is None or self._history.state is not state:
            self._history = zhai_bootstrap(state, self.config, self.system)
        else:
            self._history = zhai_step(self._history, self.config, self.system)
        return self._history.state

    def step(self, state: DloState, with_energy: bool = True) -> Tuple[DloState, StepDiagnostics]:
        """Advance one step; energy is H after the step, outside the timed region"""
        evals_before = self.system.evaluations
        started = time.perf_counter_ns()
        new_state = self._advance(state)
        elapsed = time.perf_counter_ns() - started
        self.step_index += 1

        if not new_state.is_finite:
            raise IntegrationInstability(self.step_index, new_state.time_t)
        limit = DIVERGENCE_FACTOR * self.system.length_scale
        if np.max(np.abs(new_state.ctrl_q)) > limit:
            raise IntegrationInstability(self.step_index, new_state.time_t, f"|q| exceeded {limit:g}")

        energy = None
        if with_energy:
            q, p = new_state.flat()
            energy = self.system.hamiltonian(q, p, new_state.time_t)
        return new_state, StepDiagnostics(
            force_evals=self.system.evaluations - evals_before,
            energy=energy,
            wall_nanos=elapsed,
        )


def make_stepper(config: StepConfig, system: HamiltonianSystem) -> Stepper:
    return Stepper(config, system)
