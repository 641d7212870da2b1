"""
Simulation harness: runs, diagnostics and file output
"""
from .export import export_report, export_trajectory, parse_trajectory
from .simulation import (
    convergence_study,
    energy_drift_report,
    max_stable_tau,
    run_simulation,
)

__all__ = [
    "convergence_study",
    "energy_drift_report",
    "export_report",
    "export_trajectory",
    "max_stable_tau",
    "parse_trajectory",
    "run_simulation",
]
