"""
Integrator benchmark nodes for LangGraph
"""
import dataclasses
import logging
import platform
from typing import Dict, List, Optional, Sequence, TypedDict

from langgraph.graph import END, StateGraph

from core.config import settings
from core.dynamics.model import DloModel
from core.errors import HarnessError
from core.harness.parallel import run_cells
from core.integrators.driver import integrate
from core.models.dlo_models import (
    BenchmarkReport,
    BenchmarkRow,
    IntegratorKind,
    SimulationConfig,
)
from core.scenarios.builder import initial_state

logger = logging.getLogger(__name__)


class BenchmarkState(TypedDict):
    """State for benchmark workflow"""
    base_config: SimulationConfig
    integrators: List[str]
    durations: List[float]
    warmup_steps: int
    workers: int
    rows: List[BenchmarkRow]
    ratios: Dict[float, float]
    eval_ratio: Optional[float]
    report: Optional[BenchmarkReport]
    error: Optional[str]


def machine_descriptor() -> str:
    return f"{platform.platform()} | {platform.processor() or platform.machine()} | Python {platform.python_version()}"


def cell_config(base: SimulationConfig, integrator: str, duration: float) -> SimulationConfig:
    """Base config with a different stepper and horizon, recording only the end state"""
    step = dataclasses.replace(base.step, integrator_kind=IntegratorKind.parse(integrator))
    config = dataclasses.replace(base, step=step, duration=duration, record_stride=1)
    return dataclasses.replace(config, record_stride=max(1, config.n_steps))


class BenchmarkNode:
    """Node for integrator timing operations"""

    def warm_up(self, state: BenchmarkState) -> BenchmarkState:
        """Run a few steps of every integrator before timing"""
        try:
            steps = state.get("warmup_steps", 0)
            if steps and state["durations"]:
                config = state["base_config"]
                model = DloModel.from_config(config)
                start = initial_state(config)
                for integrator in state["integrators"]:
                    step = dataclasses.replace(config.step, integrator_kind=IntegratorKind.parse(integrator))
                    integrate(model, start, step, steps, record_stride=steps)
                logger.info(f"Warmed up {len(state['integrators'])} integrators ({steps} steps each)")
        except Exception as e:
            logger.error(f"Error in warm-up: {e}")
            state["error"] = f"Warm-up error: {str(e)}"
        return state

    def run_cells(self, state: BenchmarkState) -> BenchmarkState:
        """Time one run per (integrator, duration) cell"""
        try:
            cells = [
                (integrator, duration)
                for integrator in state["integrators"]
                for duration in state["durations"]
            ]
            configs = [cell_config(state["base_config"], i, d) for i, d in cells]
            workers = 1 if settings.serial_timing else state.get("workers", 1)
            trajectories = run_cells(configs, workers)

            rows = []
            for (integrator, duration), config, trajectory in zip(cells, configs, trajectories):
                outcome = trajectory.outcome
                steps = config.n_steps if outcome.completed else outcome.step
                rows.append(BenchmarkRow(
                    integrator=IntegratorKind.parse(integrator).value,
                    duration=duration,
                    wall_seconds=trajectory.wall_seconds,
                    outcome=outcome.describe(),
                    force_evals=trajectory.force_evals,
                    steps=steps,
                ))
                logger.info(f"Cell {integrator} {duration:g}s: {trajectory.wall_seconds:.3f}s, {outcome.describe()}")
            state["rows"] = rows
        except Exception as e:
            logger.error(f"Error running benchmark cells: {e}")
            state["error"] = f"Benchmark cell error: {str(e)}"
            state["rows"] = []
        return state

    def compute_ratios(self, state: BenchmarkState) -> BenchmarkState:
        """symplectic4 / rk4 wall-time ratio per duration and per-step eval ratio"""
        try:
            completed = {
                (row.integrator, row.duration): row
                for row in state["rows"]
                if row.outcome == "completed"
            }
            sym, rk4 = IntegratorKind.SYMPLECTIC4.value, IntegratorKind.RK4.value
            ratios = {}
            for duration in state["durations"]:
                a, b = completed.get((sym, duration)), completed.get((rk4, duration))
                if a and b and b.wall_seconds > 0:
                    ratios[duration] = a.wall_seconds / b.wall_seconds

            per_step = {}
            for row in state["rows"]:
                if row.steps:
                    per_step.setdefault(row.integrator, row.evals_per_step)
            eval_ratio = None
            if per_step.get(sym) and per_step.get(rk4):
                eval_ratio = per_step[sym] / per_step[rk4]

            state["ratios"] = ratios
            state["eval_ratio"] = eval_ratio
        except Exception as e:
            logger.error(f"Error computing ratios: {e}")
            state["error"] = f"Ratio error: {str(e)}"
        return state

    def finalize_report(self, state: BenchmarkState) -> BenchmarkState:
        try:
            state["report"] = BenchmarkReport(
                rows=state["rows"],
                ratios=state.get("ratios", {}),
                eval_ratio=state.get("eval_ratio"),
                machine=machine_descriptor(),
                config_echo=state["base_config"].echo,
            )
        except Exception as e:
            logger.error(f"Error finalizing benchmark report: {e}")
            state["error"] = f"Report error: {str(e)}"
        return state


def _continue_unless_error(next_node: str):
    def route(state: BenchmarkState) -> str:
        return "error" if state.get("error") else next_node
    return route


def create_benchmark_workflow() -> StateGraph:
    """Create the integrator benchmark workflow"""

    node = BenchmarkNode()

    workflow = StateGraph(BenchmarkState)

    workflow.add_node("warm_up", node.warm_up)
    workflow.add_node("run_cells", node.run_cells)
    workflow.add_node("compute_ratios", node.compute_ratios)
    workflow.add_node("finalize_report", node.finalize_report)

    workflow.set_entry_point("warm_up")

    for source, target in (
        ("warm_up", "run_cells"),
        ("run_cells", "compute_ratios"),
        ("compute_ratios", "finalize_report"),
    ):
        workflow.add_conditional_edges(
            source,
            _continue_unless_error(target),
            {target: target, "error": END},
        )
    workflow.add_edge("finalize_report", END)

    return workflow.compile()


def benchmark(base_config: SimulationConfig, integrators: Sequence[str],
              durations: Sequence[float], warmup_steps: Optional[int] = None,
              workers: Optional[int] = None) -> BenchmarkReport:
    """Time every (integrator, duration) cell of base_config"""
    result = create_benchmark_workflow().invoke({
        "base_config": base_config,
        "integrators": [IntegratorKind.parse(i).value for i in integrators],
        "durations": [float(d) for d in durations],
        "warmup_steps": settings.benchmark_warmup_steps if warmup_steps is None else warmup_steps,
        "workers": workers or settings.harness_workers,
        "rows": [],
        "ratios": {},
        "eval_ratio": None,
        "report": None,
        "error": None,
    })
    if result.get("error"):
        raise HarnessError(result["error"])
    return result["report"]
