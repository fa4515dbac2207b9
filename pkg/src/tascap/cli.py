"""Command-line entry point: cdf / ergodic / outage / validate experiments.

Exit code 0 on success; on failure a machine-readable JSON error object is
printed to stderr and the exit code is nonzero.  Progress lines go to
stderr, data only to the output files.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import SystemConfig
from .experiments import (
    RUNNERS,
    VALIDATION_CHECKS,
    ExperimentSpec,
    default_spec,
    default_threads,
)


def _int_list(text: str) -> list:
    return [int(v) for v in text.split(",") if v.strip() != ""]


def _float_list(text: str) -> list:
    return [float(v) for v in text.split(",") if v.strip() != ""]


def _str_list(text: str) -> list:
    return [v.strip() for v in text.split(",") if v.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tascap",
        description="Capacity statistics of Rayleigh MIMO links under "
        "norm-based transmit antenna selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH.json", help="system config or full experiment spec")
    common.add_argument("--seed", type=int, default=None, help="64-bit unsigned RNG seed")
    common.add_argument("--trials", type=int, default=None, help="Monte Carlo trials per grid point")
    common.add_argument("--out", default=None, help="output artifact path")
    common.add_argument("--threads", type=int, default=None, help="worker pool size (default: all cores)")
    common.add_argument("--no-plot", action="store_true", help="skip the PNG figure")

    p_cdf = sub.add_parser("cdf", parents=[common], help="capacity CDF vs Gaussian approximation")
    p_cdf.add_argument("--n-t-grid", type=_int_list, default=None, help="comma list of pool sizes")

    p_erg = sub.add_parser("ergodic", parents=[common], help="mean capacity over an SNR grid")
    p_erg.add_argument("--l-t-grid", type=_int_list, default=None, help="comma list of selection sizes")
    p_erg.add_argument("--rho-db-grid", type=_float_list, default=None, help="comma list of SNRs in dB")

    p_out = sub.add_parser("outage", parents=[common], help="outage capacity vs selection size")
    p_out.add_argument("--n-r-grid", type=_int_list, default=None, help="comma list of receive-array sizes")
    p_out.add_argument("--l-t-grid", type=_int_list, default=None, help="comma list of selection sizes")
    p_out.add_argument("--p-out", type=float, default=None, help="outage probability (default 0.1)")
    p_out.add_argument(
        "--outage-convention",
        choices=("paper", "standard"),
        default=None,
        help="which quantile convention names the outage rate",
    )

    p_val = sub.add_parser("validate", parents=[common], help="statistical property checks (JSON report)")
    p_val.add_argument(
        "--checks",
        type=_str_list,
        default=None,
        help=f"comma subset of {','.join(VALIDATION_CHECKS)}",
    )
    return parser


def _load_config_file(path: str, kind: str):
    """A --config file is either a system config or a full experiment spec."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    if "base" in data or "kind" in data:
        data.setdefault("kind", kind)
        if data["kind"] != kind:
            raise ValueError(f"config file is for kind {data['kind']!r}, command is {kind!r}")
        return ExperimentSpec.from_dict(data)
    return SystemConfig.from_dict(data)


def resolve_spec(args: argparse.Namespace) -> ExperimentSpec:
    """Layer defaults, the optional config file and explicit flags."""
    kind = args.command
    spec = default_spec(kind)
    if args.config:
        loaded = _load_config_file(args.config, kind)
        if isinstance(loaded, ExperimentSpec):
            spec = loaded
        else:
            spec = default_spec(kind)
            spec = ExperimentSpec(
                kind=kind,
                base=loaded,
                sweep=spec.sweep,
                trials=spec.trials,
                p_out=spec.p_out,
                outage_convention=spec.outage_convention,
            )

    base = spec.base
    if args.seed is not None:
        base = base.updated(seed=args.seed)
    sweep = dict(spec.sweep)
    if kind == "cdf" and args.n_t_grid is not None:
        sweep["n_t"] = args.n_t_grid
    if kind == "ergodic":
        if args.l_t_grid is not None:
            sweep["l_t"] = args.l_t_grid
        if args.rho_db_grid is not None:
            sweep["rho_db"] = args.rho_db_grid
    if kind == "outage":
        if args.n_r_grid is not None:
            sweep["n_r"] = args.n_r_grid
        if args.l_t_grid is not None:
            sweep["l_t"] = args.l_t_grid
    if kind == "validate" and args.checks is not None:
        sweep["checks"] = args.checks

    return ExperimentSpec(
        kind=kind,
        base=base,
        sweep=sweep,
        trials=args.trials if args.trials is not None else spec.trials,
        output_path=args.out if args.out is not None else spec.output_path,
        p_out=args.p_out if getattr(args, "p_out", None) is not None else spec.p_out,
        outage_convention=(
            args.outage_convention
            if getattr(args, "outage_convention", None) is not None
            else spec.outage_convention
        ),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = resolve_spec(args)
        threads = args.threads if args.threads is not None else default_threads()
        if threads < 1:
            raise ValueError(f"--threads must be >= 1, got {threads}")
        result = RUNNERS[spec.kind](spec, threads=threads, render=not args.no_plot)
        for name, path in result.get("paths", {}).items():
            print(f"[{spec.kind}] wrote {name}: {path}", file=sys.stderr)
        if spec.kind == "validate" and not result["all_passed"]:
            failed = [c["name"] for c in result["checks"] if not c["passed"]]
            print(json.dumps({"error": "ValidationFailure", "message": f"checks failed: {failed}"}),
                  file=sys.stderr)
            return 2
        return 0
    except Exception as exc:  # CLI boundary: everything becomes an error object
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
