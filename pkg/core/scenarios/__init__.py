"""
Scenario construction
"""
from .builder import build_scenario, endpoint_constraints, external_force_at, initial_state

__all__ = ["build_scenario", "endpoint_constraints", "external_force_at", "initial_state"]
