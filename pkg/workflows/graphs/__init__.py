"""LangGraph simulation pipeline"""

from .simulation_workflow import create_simulation_workflow, simulate
from .simulation_workflow_state import SimulationWorkflowState

__all__ = ["create_simulation_workflow", "simulate", "SimulationWorkflowState"]
