"""
LangGraph workflows for the DLO simulator
"""
from .graphs import create_simulation_workflow, simulate
from .nodes import benchmark, resolution_error_study

__all__ = ["benchmark", "create_simulation_workflow", "resolution_error_study", "simulate"]
