"""Command-line entry point for the Monte-Carlo bound-verification sweep.

Exit codes: 0 success, 1 configuration error, 2 I/O error.  The LTV_SEED
environment variable, when set, overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiment import DEFAULT_U_SWEEP, ExperimentConfig, emit_csv, run_experiment


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ltv-experiment",
        description="Monte-Carlo sweep of approximate-eigenstructure error "
        "ratios and their bounds; writes one CSV row per trial.",
    )
    parser.add_argument("--k-grid", type=int, default=10)
    parser.add_argument(
        "--u-list",
        default=",".join(str(u) for u in DEFAULT_U_SWEEP),
        help="comma-separated spreading support sizes |U|",
    )
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--a", type=float, default=2.0)
    parser.add_argument("--alpha", type=float, default=0.0)
    parser.add_argument("--mode", choices=["c1", "c2"], default="c2")
    parser.add_argument("--mu", default="0,0", help="evaluation point 'T,F'")
    parser.add_argument("--subdiv", type=int, default=4)
    parser.add_argument("--n-samples", type=int, default=256)
    parser.add_argument("--dt", type=float, default=1.0 / 16.0)
    parser.add_argument("--out", required=True, help="output CSV path")
    parser.add_argument("--threads", type=int, default=1)
    return parser


def _parse_pair(text: str, name: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise _ConfigError(f"{name} must be two comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise _ConfigError(str(exc))


def parse_config(argv) -> ExperimentConfig:
    args = build_parser().parse_args(argv)
    try:
        u_measures = tuple(float(u) for u in args.u_list.split(",") if u.strip())
    except ValueError as exc:
        raise _ConfigError(f"bad --u-list: {exc}")
    seed = args.seed
    env_seed = os.environ.get("LTV_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise _ConfigError(f"bad LTV_SEED value: {env_seed!r}")
    try:
        return ExperimentConfig(
            k_grid=args.k_grid,
            u_measures=u_measures,
            trials=args.trials,
            seed=seed,
            p=args.p,
            a=args.a,
            alpha=args.alpha,
            mode=args.mode.upper(),
            mu=_parse_pair(args.mu, "--mu"),
            subdiv=args.subdiv,
            n_samples=args.n_samples,
            dt=args.dt,
            out=args.out,
            threads=args.threads,
        )
    except ValueError as exc:
        raise _ConfigError(str(exc))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except _ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    records = run_experiment(cfg)
    try:
        emit_csv(records, cfg.out)
    except OSError as exc:
        print(f"cannot write {cfg.out}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
