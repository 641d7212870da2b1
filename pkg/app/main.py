"""
Command-line entry point for the spline DLO simulator
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from core.config import settings
from core.database.sqlite import RunRecord, get_run_registry
from core.errors import ConfigError, DloError
from core.harness.export import export_report, render_report
from core.harness.simulation import convergence_study, max_stable_tau
from core.models.config_schema import RunConfigFile, load_run_config
from core.models.dlo_models import IntegratorKind, SimulationConfig
from workflows.graphs.simulation_workflow import simulate
from workflows.nodes.benchmark import benchmark
from workflows.nodes.error_study import resolution_error_study

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2


def _floats(text: str) -> List[float]:
    return [float(item) for item in text.split(",") if item.strip()]


def _ints(text: str) -> List[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def _names(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _load(args: argparse.Namespace, **updates) -> SimulationConfig:
    """Config file with any command-line overrides applied"""
    run: RunConfigFile = load_run_config(args.config)
    if getattr(args, "step_integrator", None):
        updates["step__integrator"] = args.step_integrator
    if getattr(args, "tau", None) is not None:
        updates["step__tau"] = args.tau
    if getattr(args, "duration", None) is not None:
        updates["simulation__duration"] = args.duration
    if updates:
        run = run.with_overrides(**updates)
    return run.to_simulation_config()


def _record_enabled(args: argparse.Namespace) -> bool:
    return bool(getattr(args, "record", False) or settings.record_runs)


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load(args)
    result = simulate(config, output_path=args.out, report_path=args.report,
                      record=_record_enabled(args))
    trajectory = result["trajectory"]
    print(f"outcome: {trajectory.outcome.describe()}")
    print(f"records: {len(trajectory.records)}  force_evals: {trajectory.force_evals}  "
          f"wall: {trajectory.wall_seconds:.3f}s")
    if result.get("drift") is not None:
        print(f"energy drift: {result['drift'].verdict} (max rel {result['drift'].max_rel_drift:.3e})")
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    config = _load(args)
    report = benchmark(config, _names(args.integrators), _floats(args.durations))
    if args.out:
        export_report(report, args.out)
    print(render_report(report), end="")
    if _record_enabled(args):
        registry = get_run_registry(settings.database_url)
        for row in report.rows:
            registry.record_run(RunRecord(
                command="benchmark",
                integrator=row.integrator,
                n_u=config.n_u,
                n_s=config.n_s,
                tau=config.step.tau,
                duration=row.duration,
                outcome=row.outcome.split()[0],
                wall_seconds=row.wall_seconds,
                force_evals=row.force_evals,
            ))
    return EXIT_OK


def cmd_error_study(args: argparse.Namespace) -> int:
    nus, nss = _ints(args.nu), _ints(args.ns)
    if args.reference:
        reference = _ints(args.reference)
        if len(reference) != 2:
            raise ConfigError(f"--reference needs n_u,n_s, got {args.reference!r}")
        config = _load(args, simulation__n_u=reference[0], simulation__n_s=reference[1])
    elif nus and nss:
        config = _load(args, simulation__n_u=max(nus), simulation__n_s=max(nss))
    else:
        config = _load(args)
    report = resolution_error_study(config, nus, nss)
    if args.out:
        export_report(report, args.out)
    print(render_report(report), end="")
    if _record_enabled(args):
        registry = get_run_registry(settings.database_url)
        for (n_u, n_s), wall in sorted(report.wall_seconds.items()):
            registry.record_run(RunRecord(
                command="error-study",
                integrator=config.step.integrator_kind.value,
                n_u=n_u,
                n_s=n_s,
                tau=config.step.tau,
                duration=config.duration,
                wall_seconds=wall,
            ))
    return EXIT_OK


def cmd_max_stable_tau(args: argparse.Namespace) -> int:
    config = _load(args)
    probe = args.probe_duration or settings.stability_probe_duration
    for integrator in _names(args.integrator):
        tau = max_stable_tau(config, integrator, args.tau_lo, args.tau_hi,
                             args.iterations, probe)
        print(f"{IntegratorKind.parse(integrator).value}: max stable tau = {tau:.6g} s")
    return EXIT_OK


def cmd_convergence(args: argparse.Namespace) -> int:
    for integrator in _names(args.integrator):
        result = convergence_study(integrator, _floats(args.taus), args.horizon)
        errors = ", ".join(f"{e:.3e}" for e in result.errors)
        print(f"{result.integrator}: order = {result.order:.3f}  errors = [{errors}]")
        if _record_enabled(args):
            registry = get_run_registry(settings.database_url)
            for tau in result.taus:
                registry.record_run(RunRecord(
                    command="convergence",
                    integrator=result.integrator,
                    tau=tau,
                    duration=args.horizon,
                ))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dlo-sim",
        description=f"{settings.app_title}: spline DLO simulation and integrator harness.",
    )
    ap.add_argument("--log-level", default=None, help="Overrides DLO_LOG_LEVEL.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_config(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("config", type=Path, help="TOML run configuration.")
        parser.add_argument("--record", action="store_true", help="Store the run in the registry.")

    p = sub.add_parser("simulate", help="Run one simulation and write its trajectory.")
    with_config(p)
    p.add_argument("--out", default=None, help="Trajectory CSV path.")
    p.add_argument("--report", default=None, help="Energy drift report path.")
    p.add_argument("--integrator", dest="step_integrator", default=None,
                   choices=[k.value for k in IntegratorKind])
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--duration", type=float, default=None)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("benchmark", help="Time integrators over a duration grid.")
    with_config(p)
    p.add_argument("--integrators", default="symplectic4,rk4,zhai")
    p.add_argument("--durations", default="1,5,10")
    p.add_argument("--out", default=None, help="Report path.")
    p.set_defaults(handler=cmd_benchmark)

    p = sub.add_parser("error-study", help="Position error of (n_u, n_s) variants against the config.")
    with_config(p)
    p.add_argument("--nu", default="5,9,13")
    p.add_argument("--ns", default="51,101,151")
    p.add_argument("--reference", default=None,
                   help="Reference n_u,n_s; defaults to the largest --nu and --ns.")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--out", default=None, help="Report path.")
    p.set_defaults(handler=cmd_error_study)

    p = sub.add_parser("max-stable-tau", help="Bisect for the largest stable time step.")
    with_config(p)
    p.add_argument("--integrator", default="symplectic4,rk4,zhai")
    p.add_argument("--tau-lo", type=float, default=1e-5)
    p.add_argument("--tau-hi", type=float, default=1e-2)
    p.add_argument("--iterations", type=int, default=12)
    p.add_argument("--probe-duration", type=float, default=None)
    p.set_defaults(handler=cmd_max_stable_tau)

    p = sub.add_parser("convergence", help="Convergence order on the harmonic oscillator.")
    p.add_argument("--record", action="store_true", help="Store the run in the registry.")
    p.add_argument("--integrator", default="symplectic4,rk4,zhai")
    p.add_argument("--taus", default="0.1,0.05,0.025")
    p.add_argument("--horizon", type=float, default=1.0)
    p.set_defaults(handler=cmd_convergence)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, (args.log_level or settings.log_level).upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (DloError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
