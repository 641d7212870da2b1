"""
Trajectory and report files
"""
import logging
import re
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from core.errors import DloError, HarnessError
from core.models.dlo_models import (
    COMPONENT_NAMES,
    BenchmarkReport,
    DriftSummary,
    ErrorStudyReport,
    RunOutcome,
    Trajectory,
    TrajectoryRecord,
)

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
CONFIG_PREFIX = "# config: "
EVALS_PREFIX = "# force_evals: "
OUTCOME_PREFIX = "# outcome: "
_UNSTABLE = re.compile(r"unstable step=(?P<step>-?\d+) t=(?P<time>\S+)")

PathLike = Union[str, Path]


def trajectory_columns(n_u: int) -> List[str]:
    return ["t", "energy"] + [
        f"q{i}_{name}" for i in range(n_u) for name in COMPONENT_NAMES
    ]


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    """One row per record: t, energy, then every control coordinate"""
    if not trajectory.records:
        return pd.DataFrame(columns=["t", "energy"])
    positions = trajectory.positions()
    n_u = positions.shape[1]
    data = np.column_stack([
        trajectory.times,
        trajectory.energies,
        positions.reshape(len(trajectory.records), 4 * n_u),
    ])
    return pd.DataFrame(data, columns=trajectory_columns(n_u))


def _prepare(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def export_trajectory(trajectory: Trajectory, path: PathLike) -> Path:
    """Write config echo, a CSV table and the outcome line

    Floats use 17 significant digits so parse_trajectory restores them exactly.
    """
    path = _prepare(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            for line in trajectory.config_echo:
                f.write(f"{CONFIG_PREFIX}{line}\n")
            f.write(f"{EVALS_PREFIX}{trajectory.force_evals}\n")
            trajectory_frame(trajectory).to_csv(f, index=False, float_format=FLOAT_FORMAT,
                                                lineterminator="\n")
            f.write(f"{OUTCOME_PREFIX}{trajectory.outcome.describe()}\n")
    except OSError as e:
        raise OSError(f"cannot write trajectory to {path}: {e}") from e
    logger.info(f"Trajectory written to {path} ({len(trajectory.records)} records)")
    return path


def _parse_outcome(text: str) -> RunOutcome:
    if text == "completed":
        return RunOutcome()
    match = _UNSTABLE.fullmatch(text)
    if not match:
        raise HarnessError(f"unrecognized outcome line: {text!r}")
    return RunOutcome(status="unstable", step=int(match["step"]), time=float(match["time"]))


def parse_trajectory(path: PathLike) -> Trajectory:
    """Read a file written by export_trajectory"""
    path = Path(path)
    echo, outcome, force_evals = [], RunOutcome(), 0
    with path.open("r", encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith(CONFIG_PREFIX):
                echo.append(line[len(CONFIG_PREFIX):])
            elif line.startswith(EVALS_PREFIX):
                force_evals = int(line[len(EVALS_PREFIX):])
            elif line.startswith(OUTCOME_PREFIX):
                outcome = _parse_outcome(line[len(OUTCOME_PREFIX):])

    frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    n_coords = len(frame.columns) - 2
    if n_coords < 0 or n_coords % 4:
        raise HarnessError(f"{path}: unexpected column count {len(frame.columns)}")
    n_u = n_coords // 4

    values = frame.to_numpy(dtype=float)
    records = [
        TrajectoryRecord(
            t=float(row[0]),
            energy=float(row[1]),
            ctrl_q=row[2:].reshape(n_u, 4).copy(),
            force_evals=0,
        )
        for row in values
    ]
    return Trajectory(
        config_echo=tuple(echo),
        records=records,
        outcome=outcome,
        force_evals=force_evals,
    )


def _drift_sections(report: DriftSummary):
    summary = {
        "verdict": report.verdict,
        "max_abs_drift": report.max_abs_drift,
        "max_rel_drift": report.max_rel_drift,
        "slope": report.slope,
        "residual_std": report.residual_std,
        "scale": report.scale,
    }
    return "Energy drift", summary, None, ()


def _benchmark_sections(report: BenchmarkReport):
    summary = {"machine": report.machine, "eval_ratio": report.eval_ratio}
    for duration, ratio in sorted(report.ratios.items()):
        summary[f"wall_ratio[{duration:g}s]"] = ratio
    table = pd.DataFrame(
        [
            {
                "integrator": row.integrator,
                "duration": row.duration,
                "wall_seconds": row.wall_seconds,
                "outcome": row.outcome,
                "force_evals": row.force_evals,
                "steps": row.steps,
                "evals_per_step": row.evals_per_step,
            }
            for row in report.rows
        ]
    )
    return "Integrator benchmark", summary, table, report.config_echo


def _error_study_sections(report: ErrorStudyReport):
    summary = {"reference": f"n_u={report.reference[0]} n_s={report.reference[1]}"}
    for n_u, err in sorted(report.error_vs_nu.items()):
        summary[f"error_vs_nu[{n_u}]"] = err
    for n_s, err in sorted(report.error_vs_ns.items()):
        summary[f"error_vs_ns[{n_s}]"] = err
    summary["excluded"] = ", ".join(f"({n_u},{n_s})" for n_u, n_s in report.excluded) or "none"

    rows = []
    for key in sorted(report.grids):
        n_u, n_s = key
        grid = report.grids[key]
        rows.append({
            "n_u": n_u,
            "n_s": n_s,
            "mean_error": float(np.nanmean(grid)),
            "max_error": float(np.nanmax(grid)),
            "wall_seconds": report.wall_seconds.get(key, float("nan")),
        })
    return "Resolution error study", summary, pd.DataFrame(rows), report.config_echo


def render_report(report) -> str:
    if isinstance(report, DriftSummary):
        title, summary, table, echo = _drift_sections(report)
    elif isinstance(report, BenchmarkReport):
        title, summary, table, echo = _benchmark_sections(report)
    elif isinstance(report, ErrorStudyReport):
        title, summary, table, echo = _error_study_sections(report)
    else:
        raise DloError(f"no report format for {type(report).__name__}")

    lines = [f"# {title}", "", "[summary]"]
    for key, value in summary.items():
        lines.append(f"{key} = {FLOAT_FORMAT % value if isinstance(value, float) else value}")
    if table is not None and not table.empty:
        lines += ["", "[table]", table.to_string(index=False)]
    if echo:
        lines += ["", "[config]", *echo]
    return "\n".join(lines) + "\n"


def export_report(report, path: PathLike) -> Path:
    """Human-readable report with a key = value summary section"""
    path = _prepare(path)
    try:
        path.write_text(render_report(report), encoding="utf-8")
    except OSError as e:
        raise OSError(f"cannot write report to {path}: {e}") from e
    logger.info(f"Report written to {path}")
    return path


def parse_report_summary(path: PathLike) -> dict:
    """The [summary] key = value pairs of a report, as strings"""
    summary, inside = {}, False
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("["):
            inside = line == "[summary]"
            continue
        if inside and " = " in line:
            key, value = line.split(" = ", 1)
            summary[key] = value
    return summary
