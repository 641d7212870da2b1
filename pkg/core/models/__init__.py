"""
Data models for the spline DLO simulator
"""
from .dlo_models import (
    BenchmarkReport,
    BenchmarkRow,
    ConvergenceResult,
    DloProperties,
    DloState,
    DriftSummary,
    ErrorStudyReport,
    ExternalForce,
    IntegratorKind,
    RunOutcome,
    Scenario,
    ScenarioKind,
    SimulationConfig,
    StepConfig,
    StepDiagnostics,
    StrainSample,
    Trajectory,
    TrajectoryRecord,
)

__all__ = [
    "BenchmarkReport",
    "BenchmarkRow",
    "ConvergenceResult",
    "DloProperties",
    "DloState",
    "DriftSummary",
    "ErrorStudyReport",
    "ExternalForce",
    "IntegratorKind",
    "RunOutcome",
    "Scenario",
    "ScenarioKind",
    "SimulationConfig",
    "StepConfig",
    "StepDiagnostics",
    "StrainSample",
    "Trajectory",
    "TrajectoryRecord",
]
