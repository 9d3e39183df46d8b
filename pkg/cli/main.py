"""Command line entry point.

Exit codes: 0 when every requested check passed, 1 when a check failed,
2 for invalid configurations and precondition errors.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

from cli.commands import COMMANDS, RunContext
from cli.run_config import build_run_config, config_payload, load_config_file
from core_runtime.artifact_writer import Provenance, config_hash
from core_runtime.run_logger import get_run_logger
from core_runtime.settings import Settings
from core_spectral.errors import SpectralLabError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


def _json_argument(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"not valid JSON: {exc}") from exc


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="JSON run config")
    common.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--threads", type=int, default=None, help="worker threads")
    common.add_argument("--manifold", type=_json_argument, default=None, help='e.g. \'{"kind":"circle","L":6.283185307179586}\'')
    common.add_argument("--modes", type=int, default=None, help="nonconstant modes kept")
    return common


def _simulation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--T", dest="horizon", type=float, default=None, help="horizon")
    parser.add_argument("--h", dest="h", type=float, default=None, help="time step")
    parser.add_argument("--paths", dest="n_paths", type=int, default=None, help="number of paths")
    parser.add_argument("--uniform-start", dest="uniform_start", action="store_true", default=None)
    parser.add_argument("--step-budget", dest="step_budget", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="lilm", description="Spectral LIL laboratory on compact manifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectra", parents=[common], help="eigenpair table")

    heat = sub.add_parser("heat-kernel", parents=[common], help="truncated heat kernel values")
    heat.add_argument("--t", dest="times", type=float, nargs="+", default=None)
    heat.add_argument("--x", dest="x", type=float, nargs="+", default=None)
    heat.add_argument("--y", dest="y", type=float, nargs="+", default=None)
    heat.add_argument("--profile", dest="profile_times", type=float, nargs="+", default=None)

    green = sub.add_parser("green", parents=[common], help="Green kernels and operator checks")
    green.add_argument("--alpha", dest="alpha", type=float, default=None)
    green.add_argument("--x", dest="x", type=float, nargs="+", default=None)
    green.add_argument("--y", dest="y", type=float, nargs="+", default=None)
    green.add_argument("--route", dest="route", choices=["spectral", "timeint", "both"], default=None)
    green.add_argument("--pairs", dest="random_pairs", type=int, default=None)
    green.add_argument("--verify-semigroup", dest="verify_semigroup", action="store_true", default=None)
    green.add_argument("--beta", dest="beta", type=float, default=None)

    simulate = sub.add_parser("simulate", parents=[common], help="Brownian ensemble with checkpoints")
    _simulation_flags(simulate)
    simulate.add_argument("--observables", dest="observables", nargs="+", default=None)
    simulate.add_argument("--resume-out", dest="resume_out", action="store_true", default=None, help="write final path states")

    lil = sub.add_parser("lil", parents=[common], help="running limsup against sigma_f")
    _simulation_flags(lil)
    lil.add_argument("--f", dest="observables", nargs="+", default=None, help="e.g. phi1")
    lil.add_argument("--window-start", dest="window_start", type=float, default=None)
    lil.add_argument("--require-band", dest="require_band", action="store_true", default=None)

    cluster = sub.add_parser("cluster", parents=[common], help="cluster cloud of (mu_t(f_1..f_n))")
    _simulation_flags(cluster)
    cluster.add_argument("--n", dest="n", type=int, default=None)
    cluster.add_argument("--seeds", dest="n_paths", type=int, default=None)
    cluster.add_argument("--require-containment", dest="require_containment", action="store_true", default=None)

    chase = sub.add_parser("chase", parents=[common], help="target chasing along checkpoints")
    _simulation_flags(chase)
    chase.add_argument("--target", dest="target", type=float, nargs="+", default=None)
    chase.add_argument("--eps", dest="eps", type=float, nargs="+", default=None)
    chase.add_argument("--budget", dest="budget", type=float, default=None)
    chase.add_argument("--seeds", dest="n_paths", type=int, default=None)
    chase.add_argument("--require-success", dest="require_success", action="store_true", default=None)

    characterize = sub.add_parser("characterize", parents=[common], help="membership of a candidate density")
    characterize.add_argument("--density", dest="density", default=None, help="SpectralFunction JSON file")
    characterize.add_argument("--n-max", dest="n_max", type=int, default=None)
    characterize.add_argument("--require-member", dest="require_member", action="store_true", default=None)
    return parser


_RUNTIME_KEYS = {"command", "config", "out", "threads"}


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: value for key, value in vars(args).items() if key not in _RUNTIME_KEYS and value is not None}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = Settings()
    logging.basicConfig(level=getattr(logging, settings.log_level, logging.INFO), format="%(levelname)s %(name)s: %(message)s")
    run_logger = get_run_logger(args.command.replace("-", "_"), settings.log_dir)

    try:
        file_payload = load_config_file(args.config)
        config = build_run_config(args.command, file_payload, _overrides(args))
        provenance = Provenance(
            tool=settings.tool_name,
            tool_version=settings.tool_version,
            config_hash=config_hash(config_payload(config)),
            seed=config.seed,
        )
        base_dir = Path(args.config).resolve().parent if args.config else Path.cwd()
        ctx = RunContext(
            out_dir=Path(args.out) if args.out else settings.out_dir,
            threads=max(1, args.threads or settings.threads),
            provenance=provenance,
            run_logger=run_logger,
            base_dir=base_dir,
        )
        run_logger.run_log({"command": args.command, "config_hash": provenance.config_hash, "seed": config.seed})
        outcome = COMMANDS[args.command](config, ctx)
    except SpectralLabError as exc:
        logger.error("%s failed: %s", args.command, exc)
        run_logger.check_log({"command": args.command, "error": str(exc)})
        return EXIT_CONFIG_ERROR

    artifacts: List[str] = [str(path) for path in outcome.artifacts]
    run_logger.artifact_log({"command": args.command, "artifacts": artifacts, "ok": outcome.ok})
    for path in artifacts:
        print(path)
    return EXIT_OK if outcome.ok else EXIT_CHECK_FAILED


__all__ = ["EXIT_CHECK_FAILED", "EXIT_CONFIG_ERROR", "EXIT_OK", "build_parser", "main"]
