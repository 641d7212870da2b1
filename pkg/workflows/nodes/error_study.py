"""
Resolution error study nodes for LangGraph
"""
import dataclasses
import logging
from typing import Dict, List, Optional, Sequence, Tuple, TypedDict

import numpy as np
from langgraph.graph import END, StateGraph

from core.config import settings
from core.errors import ConfigError, HarnessError
from core.harness.parallel import run_cell, run_cells
from core.harness.resolution import (
    error_grid,
    interval_edges,
    station_positions,
    station_values,
    summarize,
    variant_grid,
)
from core.models.dlo_models import ErrorStudyReport, SimulationConfig, Trajectory
from core.scenarios.builder import endpoint_constraints

logger = logging.getLogger(__name__)

Resolution = Tuple[int, int]


class ErrorStudyState(TypedDict):
    """State for the resolution error study workflow"""
    reference_config: SimulationConfig
    n_u_values: List[int]
    n_s_values: List[int]
    workers: int
    reference_trajectory: Optional[Trajectory]
    trajectories: Dict[Resolution, Trajectory]
    excluded: List[Resolution]
    grids: Dict[Resolution, np.ndarray]
    report: Optional[ErrorStudyReport]
    error: Optional[str]


def variant_config(reference: SimulationConfig, n_u: int, n_s: int) -> SimulationConfig:
    """Reference config at another resolution; constraints follow the new endpoints"""
    scenario = dataclasses.replace(reference.scenario, fixed_dofs=endpoint_constraints(n_u))
    return dataclasses.replace(reference, n_u=n_u, n_s=n_s, scenario=scenario)


class ErrorStudyNode:
    """Node for model granularity comparisons"""

    def run_reference(self, state: ErrorStudyState) -> ErrorStudyState:
        try:
            config = state["reference_config"]
            trajectory = run_cell(config)
            if not trajectory.outcome.completed:
                raise HarnessError(f"reference run is {trajectory.outcome.describe()}")
            state["reference_trajectory"] = trajectory
            logger.info(f"Reference (n_u={config.n_u}, n_s={config.n_s}) finished in {trajectory.wall_seconds:.2f}s")
        except Exception as e:
            logger.error(f"Error running reference: {e}")
            state["error"] = f"Reference run error: {str(e)}"
        return state

    def run_variants(self, state: ErrorStudyState) -> ErrorStudyState:
        try:
            reference = state["reference_config"]
            ref_key = (reference.n_u, reference.n_s)
            keys = [k for k in variant_grid(state["n_u_values"], state["n_s_values"]) if k != ref_key]
            configs = [variant_config(reference, n_u, n_s) for n_u, n_s in keys]
            trajectories = dict(zip(keys, run_cells(configs, state.get("workers", 1))))
            trajectories[ref_key] = state["reference_trajectory"]

            excluded = []
            for key, trajectory in trajectories.items():
                if not trajectory.outcome.completed:
                    logger.warning(f"Variant {key} excluded: {trajectory.outcome.describe()}")
                    excluded.append(key)
            state["trajectories"] = {k: t for k, t in trajectories.items() if k not in excluded}
            state["excluded"] = sorted(excluded)
        except Exception as e:
            logger.error(f"Error running variants: {e}")
            state["error"] = f"Variant run error: {str(e)}"
        return state

    def compute_errors(self, state: ErrorStudyState) -> ErrorStudyState:
        try:
            reference = state["reference_config"]
            length_L = reference.properties.length_L
            stations = station_values(length_L)
            edges = interval_edges(reference.duration)

            ref_traj = state["reference_trajectory"]
            ref_positions = station_positions(ref_traj, reference.n_u, length_L, stations)
            times = ref_traj.times

            grids = {}
            for (n_u, n_s), trajectory in state["trajectories"].items():
                if len(trajectory.records) != len(times) or not np.allclose(trajectory.times, times):
                    raise HarnessError(f"variant ({n_u}, {n_s}) records do not line up with the reference")
                positions = station_positions(trajectory, n_u, length_L, stations)
                grids[(n_u, n_s)] = error_grid(positions, ref_positions, times, edges)
            state["grids"] = grids
        except Exception as e:
            logger.error(f"Error computing position errors: {e}")
            state["error"] = f"Error computation error: {str(e)}"
        return state

    def summarize(self, state: ErrorStudyState) -> ErrorStudyState:
        try:
            reference = state["reference_config"]
            ref_key = (reference.n_u, reference.n_s)
            error_vs_nu, error_vs_ns, error_vs_t, error_vs_u = summarize(state["grids"], ref_key)
            state["report"] = ErrorStudyReport(
                reference=ref_key,
                stations=station_values(reference.properties.length_L),
                interval_edges=interval_edges(reference.duration),
                grids=state["grids"],
                wall_seconds={k: t.wall_seconds for k, t in state["trajectories"].items()},
                excluded=state["excluded"],
                error_vs_nu=error_vs_nu,
                error_vs_ns=error_vs_ns,
                error_vs_t=error_vs_t,
                error_vs_u=error_vs_u,
                config_echo=reference.echo,
            )
            logger.info(f"Error study summarized: {len(state['grids'])} variants, {len(state['excluded'])} excluded")
        except Exception as e:
            logger.error(f"Error summarizing study: {e}")
            state["error"] = f"Summary error: {str(e)}"
        return state


def should_continue(next_node: str):
    def route(state: ErrorStudyState) -> str:
        return "error" if state.get("error") else next_node
    return route


def create_error_study_workflow() -> StateGraph:
    """Create the resolution error study workflow"""

    node = ErrorStudyNode()

    workflow = StateGraph(ErrorStudyState)

    workflow.add_node("run_reference", node.run_reference)
    workflow.add_node("run_variants", node.run_variants)
    workflow.add_node("compute_errors", node.compute_errors)
    workflow.add_node("summarize", node.summarize)

    workflow.set_entry_point("run_reference")

    for source, target in (
        ("run_reference", "run_variants"),
        ("run_variants", "compute_errors"),
        ("compute_errors", "summarize"),
    ):
        workflow.add_conditional_edges(source, should_continue(target), {target: target, "error": END})
    workflow.add_edge("summarize", END)

    return workflow.compile()


def resolution_error_study(reference_config: SimulationConfig, n_u_values: Sequence[int],
                           n_s_values: Sequence[int], workers: Optional[int] = None) -> ErrorStudyReport:
    """Position error of every (n_u, n_s) variant against reference_config"""
    largest = (max(n_u_values, default=0), max(n_s_values, default=0))
    if largest[0] > reference_config.n_u or largest[1] > reference_config.n_s:
        raise ConfigError(
            f"variants up to {largest} exceed the reference "
            f"({reference_config.n_u}, {reference_config.n_s}); the reference must be the finest resolution"
        )
    result = create_error_study_workflow().invoke({
        "reference_config": reference_config,
        "n_u_values": [int(n) for n in n_u_values],
        "n_s_values": [int(n) for n in n_s_values],
        "workers": workers or settings.harness_workers,
        "reference_trajectory": None,
        "trajectories": {},
        "excluded": [],
        "grids": {},
        "report": None,
        "error": None,
    })
    if result.get("error"):
        raise HarnessError(result["error"])
    return result["report"]
