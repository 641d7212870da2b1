"""
Position error of a coarse model against a reference model
"""
from typing import Dict, Iterable, Tuple

import numpy as np

from core.errors import HarnessError
from core.models.dlo_models import Trajectory
from core.spline.basis import build_basis, eval_basis

N_STATIONS = 10
N_INTERVALS = 20

Resolution = Tuple[int, int]


def station_values(length_L: float, n_stations: int = N_STATIONS) -> np.ndarray:
    return np.linspace(0.0, length_L, n_stations)


def interval_edges(duration: float, n_intervals: int = N_INTERVALS) -> np.ndarray:
    return np.linspace(0.0, duration, n_intervals + 1)


def station_positions(trajectory: Trajectory, n_u: int, length_L: float,
                      stations: np.ndarray) -> np.ndarray:
    """(n_records, n_stations, 3) curve positions r(u_s, t) from each snapshot"""
    basis = build_basis(n_u, length_L)
    weights = np.stack([eval_basis(basis, u) for u in stations])
    positions = trajectory.positions()[:, :, :3]
    if positions.shape[1] != n_u:
        raise HarnessError(f"trajectory has {positions.shape[1]} control points, expected {n_u}")
    return np.einsum("si,rik->rsk", weights, positions)


def error_grid(variant: np.ndarray, reference: np.ndarray, times: np.ndarray,
               edges: np.ndarray) -> np.ndarray:
    """(n_stations, n_intervals) mean Euclidean distance per station and time bin"""
    if variant.shape != reference.shape:
        raise HarnessError(f"record grids differ: {variant.shape} vs {reference.shape}")
    distance = np.linalg.norm(variant - reference, axis=2)
    bins = np.clip(np.searchsorted(edges, times, side="right") - 1, 0, len(edges) - 2)
    grid = np.full((distance.shape[1], len(edges) - 1), np.nan)
    for j in range(len(edges) - 1):
        selected = bins == j
        if selected.any():
            grid[:, j] = distance[selected].mean(axis=0)
    return grid


def summarize(grids: Dict[Resolution, np.ndarray], reference: Resolution):
    """Error vs n_u and vs n_s averaged over the other axis, plus per-variant curves"""
    by_nu: Dict[int, list] = {}
    by_ns: Dict[int, list] = {}
    error_vs_t, error_vs_u = {}, {}
    for key, grid in grids.items():
        error_vs_t[key] = np.nanmean(grid, axis=0)
        error_vs_u[key] = np.nanmean(grid, axis=1)
        if key == reference:
            continue
        by_nu.setdefault(key[0], []).append(float(np.nanmean(grid)))
        by_ns.setdefault(key[1], []).append(float(np.nanmean(grid)))
    error_vs_nu = {n_u: float(np.mean(v)) for n_u, v in sorted(by_nu.items())}
    error_vs_ns = {n_s: float(np.mean(v)) for n_s, v in sorted(by_ns.items())}
    return error_vs_nu, error_vs_ns, error_vs_t, error_vs_u


def variant_grid(n_u_values: Iterable[int], n_s_values: Iterable[int]) -> Tuple[Resolution, ...]:
    return tuple((int(n_u), int(n_s)) for n_u in n_u_values for n_s in n_s_values)
