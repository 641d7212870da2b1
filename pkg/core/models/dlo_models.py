"""
Data models for the spline DLO simulator
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from core.errors import ConfigError, DimensionError, InvalidArgumentError

# Component indices of a control point row (x, y, z, theta)
X, Y, Z, THETA = 0, 1, 2, 3
COMPONENT_NAMES = ("x", "y", "z", "theta")


class IntegratorKind(str, Enum):
    """Explicit steppers available to the harness"""
    SYMPLECTIC4 = "symplectic4"
    RK4 = "rk4"
    ZHAI = "zhai"

    @classmethod
    def parse(cls, value: "IntegratorKind | str") -> "IntegratorKind":
        try:
            return cls(value)
        except ValueError:
            raise ConfigError(f"unknown integrator kind: {value!r}") from None


class ScenarioKind(str, Enum):
    """Shipped boundary/loading scenarios"""
    GRAVITY_ONLY = "gravity_only"
    SINUSOIDAL_CENTER = "sinusoidal_center"


@dataclass(frozen=True)
class DloProperties:
    """Geometry and material of the DLO"""
    length_L: float = 2.0
    diameter_D: float = 0.002
    young_E: float = 69e9
    shear_G: float = 26e9
    density_rho: float = 2700.0
    plastic_strain_eps0: Optional[np.ndarray] = None  # (n_s, 3), zero when absent

    def __post_init__(self):
        for name in ("length_L", "diameter_D", "young_E", "shear_G", "density_rho"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidArgumentError(f"{name} must be positive, got {value!r}")
        if self.plastic_strain_eps0 is not None:
            eps0 = np.asarray(self.plastic_strain_eps0, dtype=float)
            if eps0.ndim != 2 or eps0.shape[1] != 3:
                raise DimensionError(f"plastic strain must be (n_s, 3), got {eps0.shape}")
            eps0.setflags(write=False)
            object.__setattr__(self, "plastic_strain_eps0", eps0)

    @property
    def cross_section_area(self) -> float:
        return math.pi * self.diameter_D ** 2 / 4.0

    @property
    def linear_density_mu(self) -> float:
        """Mass per unit length (kg/m)"""
        return self.density_rho * self.cross_section_area

    @property
    def polar_inertia_I(self) -> float:
        """Rotational inertia per unit length (kg·m)"""
        return self.linear_density_mu * self.diameter_D ** 2 / 8.0

    @property
    def stiffness_H(self) -> np.ndarray:
        from core.dynamics.strains import stiffness_matrix
        return stiffness_matrix(self)

    def plastic_strain(self, n_s: int) -> np.ndarray:
        """ε₀ per sample point, zeros by default"""
        if self.plastic_strain_eps0 is None:
            return np.zeros((n_s, 3))
        if self.plastic_strain_eps0.shape[0] != n_s:
            raise DimensionError(
                f"plastic strain has {self.plastic_strain_eps0.shape[0]} rows, grid has {n_s}"
            )
        return self.plastic_strain_eps0


@dataclass(frozen=True)
class DloState:
    """Canonical coordinates (q, p) at time t"""
    time_t: float
    ctrl_q: np.ndarray
    momenta_p: np.ndarray

    def __post_init__(self):
        if np.shape(self.ctrl_q) != np.shape(self.momenta_p):
            raise DimensionError(
                f"ctrl_q {np.shape(self.ctrl_q)} and momenta_p {np.shape(self.momenta_p)} differ"
            )

    @property
    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.ctrl_q)) and np.all(np.isfinite(self.momenta_p)))

    def flat(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.reshape(self.ctrl_q, -1), np.reshape(self.momenta_p, -1)

    def with_flat(self, time_t: float, q: np.ndarray, p: np.ndarray) -> "DloState":
        shape = np.shape(self.ctrl_q)
        return DloState(time_t=time_t, ctrl_q=np.reshape(q, shape), momenta_p=np.reshape(p, shape))


@dataclass(frozen=True)
class StrainSample:
    """Strain measures at a single sample point"""
    eps_s: float
    eps_t: float
    eps_b: float
    cross_C: Tuple[float, float, float]
    gamma: float


@dataclass(frozen=True)
class ExternalForce:
    """Single-point sinusoidal force schedule"""
    amplitude_N: float
    frequency_Hz: float
    direction: Tuple[float, float, float]
    apply_u: float

    def __post_init__(self):
        if not self.frequency_Hz > 0:
            raise InvalidArgumentError(f"force frequency must be positive, got {self.frequency_Hz!r}")
        norm = float(np.linalg.norm(self.direction))
        if not norm > 0:
            raise InvalidArgumentError("force direction must be non-zero")
        object.__setattr__(self, "direction", tuple(float(c) / norm for c in self.direction))

    def magnitude_at(self, t: float) -> float:
        return self.amplitude_N * math.sin(2.0 * math.pi * self.frequency_Hz * t)


@dataclass(frozen=True)
class Scenario:
    """Boundary conditions, gravity and external loading"""
    kind: str
    gravity: Tuple[float, float, float] = (0.0, 0.0, -9.81)
    spring_Kx: float = 1.0e4
    spring_anchors_x: Tuple[float, float] = (0.0, 2.0)
    fixed_dofs: FrozenSet[Tuple[int, int]] = frozenset()
    external_force: Optional[ExternalForce] = None

    def __post_init__(self):
        if self.spring_Kx < 0:
            raise InvalidArgumentError(f"spring stiffness must be non-negative, got {self.spring_Kx!r}")
        object.__setattr__(self, "gravity", tuple(float(g) for g in self.gravity))
        object.__setattr__(self, "fixed_dofs", frozenset(self.fixed_dofs))

    def free_mask(self, n_u: int) -> np.ndarray:
        """Boolean mask over the flattened (n_u, 4) DOFs; False where pinned"""
        mask = np.ones((n_u, 4), dtype=bool)
        for index, component in self.fixed_dofs:
            mask[index, component] = False
        return mask.reshape(-1)


@dataclass(frozen=True)
class StepConfig:
    """Time stepping parameters"""
    tau: float
    integrator_kind: IntegratorKind = IntegratorKind.SYMPLECTIC4
    zhai_psi: float = 0.5
    zhai_phi: float = 0.5

    def __post_init__(self):
        if not (math.isfinite(self.tau) and self.tau != 0):
            raise InvalidArgumentError(f"tau must be finite and non-zero, got {self.tau!r}")
        if not (math.isfinite(self.zhai_psi) and math.isfinite(self.zhai_phi)):
            raise InvalidArgumentError("zhai parameters must be finite")
        object.__setattr__(self, "integrator_kind", IntegratorKind.parse(self.integrator_kind))


@dataclass(frozen=True)
class SimulationConfig:
    """Everything needed to run one simulation"""
    n_u: int
    n_s: int
    duration: float
    step: StepConfig
    properties: DloProperties
    scenario: Scenario
    record_stride: int = 1
    echo: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.n_u < 4:
            raise ConfigError(f"n_u must be >= 4, got {self.n_u}")
        if self.n_s < 2:
            raise ConfigError(f"n_s must be >= 2, got {self.n_s}")
        if not self.duration > 0:
            raise ConfigError(f"duration must be positive, got {self.duration!r}")
        if self.step.tau <= 0:
            raise ConfigError(f"simulation tau must be positive, got {self.step.tau!r}")
        if self.record_stride < 1:
            raise ConfigError(f"record_stride must be >= 1, got {self.record_stride}")

    @property
    def n_steps(self) -> int:
        return int(math.floor(self.duration / self.step.tau + 1e-9))


@dataclass(frozen=True)
class StepDiagnostics:
    """Per-step bookkeeping"""
    force_evals: int
    energy: Optional[float] = None
    wall_nanos: int = 0


@dataclass(frozen=True)
class TrajectoryRecord:
    """One recorded snapshot"""
    t: float
    ctrl_q: np.ndarray
    energy: float
    force_evals: int
    kinetic: Optional[float] = None


@dataclass(frozen=True)
class RunOutcome:
    """Completed, or unstable at a given step"""
    status: str = "completed"
    step: Optional[int] = None
    time: Optional[float] = None

    @property
    def completed(self) -> bool:
        return self.status == "completed"

    def describe(self) -> str:
        if self.completed:
            return "completed"
        return f"unstable step={self.step} t={self.time!r}"


@dataclass
class Trajectory:
    """Time series of states plus diagnostics"""
    config_echo: Tuple[str, ...] = ()
    records: List[TrajectoryRecord] = field(default_factory=list)
    outcome: RunOutcome = field(default_factory=RunOutcome)
    wall_seconds: float = 0.0
    force_evals: int = 0

    @property
    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    @property
    def energies(self) -> np.ndarray:
        return np.array([r.energy for r in self.records])

    def positions(self) -> np.ndarray:
        """(n_records, n_u, 4) stack of control snapshots"""
        return np.stack([r.ctrl_q for r in self.records])


@dataclass(frozen=True)
class DriftSummary:
    """Energy drift diagnostics of a trajectory"""
    max_abs_drift: float
    max_rel_drift: float
    slope: float
    residual_std: float
    scale: float
    verdict: str


@dataclass
class BenchmarkRow:
    integrator: str
    duration: float
    wall_seconds: float
    outcome: str
    force_evals: int
    steps: int

    @property
    def evals_per_step(self) -> float:
        return self.force_evals / self.steps if self.steps else 0.0


@dataclass
class BenchmarkReport:
    """Integrator timing comparison"""
    rows: List[BenchmarkRow] = field(default_factory=list)
    ratios: Dict[float, float] = field(default_factory=dict)  # duration -> wall(symplectic4)/wall(rk4)
    eval_ratio: Optional[float] = None
    machine: str = ""
    config_echo: Tuple[str, ...] = ()


@dataclass
class ErrorStudyReport:
    """Model granularity error study"""
    reference: Tuple[int, int]
    stations: np.ndarray
    interval_edges: np.ndarray
    grids: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)
    wall_seconds: Dict[Tuple[int, int], float] = field(default_factory=dict)
    excluded: List[Tuple[int, int]] = field(default_factory=list)
    error_vs_nu: Dict[int, float] = field(default_factory=dict)
    error_vs_ns: Dict[int, float] = field(default_factory=dict)
    error_vs_t: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)
    error_vs_u: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)
    config_echo: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ConvergenceResult:
    """Global error against the oscillator solution for a sequence of steps"""
    integrator: str
    taus: Tuple[float, ...]
    errors: Tuple[float, ...]
    order: float
