"""
Independent simulation cells, serially or on a process pool
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Sequence

from core.harness.simulation import run_simulation
from core.models.dlo_models import SimulationConfig, Trajectory

logger = logging.getLogger(__name__)


def run_cell(config: SimulationConfig) -> Trajectory:
    return run_simulation(config)


def run_cells(configs: Sequence[SimulationConfig], workers: int = 1) -> List[Trajectory]:
    """Trajectories in the order of configs"""
    if workers <= 1 or len(configs) <= 1:
        return [run_cell(config) for config in configs]
    logger.info(f"Running {len(configs)} cells on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, configs))
