"""Simulation Workflow Definition using LangGraph"""

import logging
from typing import Any, Dict, Optional

from langgraph.graph import END, StateGraph

from core.config import settings
from core.database.sqlite import get_run_registry, run_record
from core.errors import HarnessError
from core.harness.export import export_report, export_trajectory
from core.harness.simulation import MIN_DRIFT_RECORDS, energy_drift_report, run_simulation
from core.models.dlo_models import SimulationConfig

from .simulation_workflow_state import SimulationWorkflowState

logger = logging.getLogger(__name__)


def run_simulate(state: SimulationWorkflowState) -> Dict[str, Any]:
    """Integrate the configured run"""
    try:
        trajectory = run_simulation(state["config"])
        return {"trajectory": trajectory, "current_step": "simulate_complete"}
    except Exception as e:
        logger.error(f"Simulation failed: {e}")
        return {"error": f"Simulation error: {str(e)}", "current_step": "simulate_error"}


def run_diagnose_energy(state: SimulationWorkflowState) -> Dict[str, Any]:
    """Energy drift summary when there are enough records"""
    try:
        trajectory = state["trajectory"]
        if len(trajectory.records) < MIN_DRIFT_RECORDS:
            logger.warning(f"Only {len(trajectory.records)} records; skipping drift diagnostics")
            return {"drift": None, "current_step": "diagnose_complete"}
        drift = energy_drift_report(trajectory)
        logger.info(f"Energy drift: verdict={drift.verdict}, max rel={drift.max_rel_drift:.3e}")
        return {"drift": drift, "current_step": "diagnose_complete"}
    except Exception as e:
        logger.error(f"Energy diagnostics failed: {e}")
        return {"error": f"Diagnostics error: {str(e)}", "current_step": "diagnose_error"}


def run_export(state: SimulationWorkflowState) -> Dict[str, Any]:
    """Write files and the registry row that were asked for"""
    try:
        trajectory = state["trajectory"]
        drift = state.get("drift")
        if state.get("output_path"):
            export_trajectory(trajectory, state["output_path"])
        if state.get("report_path") and drift is not None:
            export_report(drift, state["report_path"])
        if state.get("record"):
            get_run_registry(settings.database_url).record_run(run_record(
                state.get("command", "simulate"),
                state["config"],
                trajectory,
                drift.max_rel_drift if drift else None,
            ))
        return {"current_step": "export_complete"}
    except Exception as e:
        logger.error(f"Export failed: {e}")
        return {"error": f"Export error: {str(e)}", "current_step": "export_error"}


def should_continue(state: SimulationWorkflowState) -> str:
    """Route to the next node, or to the error handler"""
    if state.get("error"):
        return "error"

    current_step = state.get("current_step", "")

    if current_step == "simulate_complete":
        return "diagnose_energy"
    elif current_step == "diagnose_complete":
        return "export"
    else:
        return END


def handle_error(state: SimulationWorkflowState) -> Dict[str, Any]:
    error_msg = state.get("error", "Unknown error occurred")
    logger.error(f"Simulation pipeline stopped: {error_msg}")
    return {"current_step": "error_handled"}


def create_simulation_workflow() -> StateGraph:
    """Create the simulate → diagnose_energy → export workflow"""

    workflow = StateGraph(SimulationWorkflowState)

    workflow.add_node("simulate", run_simulate)
    workflow.add_node("diagnose_energy", run_diagnose_energy)
    workflow.add_node("export", run_export)
    workflow.add_node("error_handler", handle_error)

    workflow.set_entry_point("simulate")

    workflow.add_conditional_edges(
        "simulate",
        should_continue,
        {
            "diagnose_energy": "diagnose_energy",
            "error": "error_handler"
        }
    )

    workflow.add_conditional_edges(
        "diagnose_energy",
        should_continue,
        {
            "export": "export",
            "error": "error_handler"
        }
    )

    workflow.add_conditional_edges(
        "export",
        should_continue,
        {
            END: END,
            "error": "error_handler"
        }
    )

    workflow.add_edge("error_handler", END)

    return workflow.compile()


def simulate(config: SimulationConfig, output_path: Optional[str] = None,
             report_path: Optional[str] = None, record: bool = False,
             command: str = "simulate") -> SimulationWorkflowState:
    """Run the pipeline; raises HarnessError if any node failed"""
    result = create_simulation_workflow().invoke({
        "config": config,
        "command": command,
        "output_path": output_path,
        "report_path": report_path,
        "record": record,
        "trajectory": None,
        "drift": None,
        "current_step": None,
        "error": None,
    })
    if result.get("error"):
        raise HarnessError(result["error"])
    return result
