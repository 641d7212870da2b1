"""Simulation Workflow State Definition"""

from typing import Optional

from typing_extensions import TypedDict

from core.models.dlo_models import DriftSummary, SimulationConfig, Trajectory


class SimulationWorkflowState(TypedDict):
    """State of the simulate → diagnose → export pipeline"""

    # Run input
    config: SimulationConfig
    command: str

    # Output targets (optional)
    output_path: Optional[str]
    report_path: Optional[str]
    record: bool

    # Results
    trajectory: Optional[Trajectory]
    drift: Optional[DriftSummary]

    # Current step
    current_step: Optional[str]

    # Error info
    error: Optional[str]
