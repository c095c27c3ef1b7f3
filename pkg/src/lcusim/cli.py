"""Command-line experiment runner.

    lcusim run <config> [--out DIR] [--threads N] [--override-size]
    lcusim list
    lcusim describe <name>
    lcusim validate <config>

Exit codes: 0 success, 1 validation failure, 2 runtime failure. A run writes
every CSV first and the manifest last, so an interrupted run leaves no
manifest behind.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from .config import (DIMENSION_LIMIT, ConfigError, EXPERIMENTS, ExperimentConfig,
                     config_echo, default_config, hilbert_dimensions, parse_config,
                     validate_config)
from .csvio import RunManifest, sha256_file, write_csv, write_manifest
from .experiments import run_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcusim",
        description="Numerical experiments for LCU ground-state preparation "
                    "and resolvent-based spectral functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="execute the experiments in a config file")
    run_parser.add_argument("config", help="path to an INI experiment config")
    run_parser.add_argument("--out", default=".", help="output directory (default: .)")
    run_parser.add_argument("--threads", type=int, default=1,
                            help="worker threads for independent grid tasks")
    run_parser.add_argument("--override-size", action="store_true",
                            help="allow Hilbert dimensions beyond the resource limit")

    sub.add_parser("list", help="list the available experiments")

    describe_parser = sub.add_parser("describe", help="show one experiment's defaults")
    describe_parser.add_argument("name")

    validate_parser = sub.add_parser("validate", help="check a config without running")
    validate_parser.add_argument("config")
    return parser


def _load_and_validate(path: str) -> tuple[list[ExperimentConfig], int]:
    """Parse a config and print diagnostics; returns (configs, error_count)."""
    configs = parse_config(path)
    errors = 0
    for cfg in configs:
        for diag in validate_config(cfg):
            print(f"{diag.level}: [{cfg.experiment}] {diag.message}",
                  file=sys.stderr if diag.level == "error" else sys.stdout)
            errors += diag.level == "error"
    return configs, errors


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        configs, errors = _load_and_validate(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if errors:
        return 1
    print(f"ok: {len(configs)} experiment(s) valid")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    try:
        configs, errors = _load_and_validate(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if errors:
        return 1
    worst = max((dim for cfg in configs for dim in hilbert_dimensions(cfg)), default=0)
    if worst > DIMENSION_LIMIT and not args.override_size:
        print(f"error: largest Hilbert dimension {worst} exceeds the resource "
              f"limit {DIMENSION_LIMIT}; pass --override-size to proceed",
              file=sys.stderr)
        return 1
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 1

    started = time.monotonic()
    try:
        os.makedirs(args.out, exist_ok=True)
        checksums: dict[str, str] = {}
        echoes = []
        for cfg in configs:
            for artifact in run_experiment(cfg, threads=args.threads):
                path = os.path.join(args.out, artifact.name)
                write_csv(path, artifact.header, artifact.rows)
                checksums[artifact.name] = sha256_file(path)
                print(f"wrote {path} ({len(artifact.rows)} rows)")
            echoes.append(config_echo(cfg))
        manifest = RunManifest(config_sha256=sha256_file(args.config),
                               files=checksums,
                               wall_clock_seconds=time.monotonic() - started,
                               experiments=echoes)
        print(f"wrote {write_manifest(args.out, manifest)}")
    except Exception as exc:  # runtime failure: leave no manifest
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_list() -> int:
    for name in EXPERIMENTS:
        print(name)
    return 0


def cmd_describe(name: str) -> int:
    try:
        cfg = default_config(name)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{name}: {EXPERIMENTS[name]}")
    print("defaults:")
    for key, value in config_echo(cfg).items():
        if key == "experiment":
            continue
        rendered = ", ".join(str(v) for v in value) if isinstance(value, list) else value
        print(f"  {key} = {rendered}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "list":
        return cmd_list()
    if args.command == "describe":
        return cmd_describe(args.name)
    if args.command == "validate":
        return cmd_validate(args)
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
