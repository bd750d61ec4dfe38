"""Command line: run scenarios or presets, sweep detunings, print steady states.

Exit codes: 0 success, 2 configuration error, 3 numerical-validity failure,
4 I/O failure.  The ERGOKIT_OUT_DIR environment variable supplies the
default output directory.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from .config import PRESETS, ScenarioConfig, expand_sweep, load_config, preset_runs
from .dynamics import ContinuousDrive, InvalidConfig, NoDrive, simulate, steady_state
from .ergotropy import ConsistencyError, NoConvergence, ergotropy_breakdown
from .output import output_rows, write_csv, write_json
from .qstate import BatteryHamiltonian, NonPhysicalState

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

ENV_OUT_DIR = "ERGOKIT_OUT_DIR"


def _execute(config: ScenarioConfig) -> list[dict[str, Any]]:
    record = simulate(
        config.initial(),
        config.protocol,
        config.physics,
        t_end=config.t_end,
        dt=config.dt,
        sample_every=config.sample_every,
    )
    return output_rows(record, config.physics.delta)


def _run_many(configs: list[ScenarioConfig], workers: int) -> list[list[dict[str, Any]]]:
    if workers <= 1 or len(configs) <= 1:
        return [_execute(c) for c in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_execute, configs))


def _summary_line(config: ScenarioConfig, rows: list[dict[str, Any]], path: Path | None) -> str:
    final = rows[-1]
    parts = [f"final W={final['W']:.6f}"]
    protocol = config.protocol
    if isinstance(protocol, (ContinuousDrive, NoDrive)):
        omega = protocol.omega if isinstance(protocol, ContinuousDrive) else 0.0
        target = steady_state(ContinuousDrive(omega), config.physics)
        dist = math.hypot(
            final["rho_ee"] - target.rho_ee,
            abs(complex(final["re_rho_ge"], final["im_rho_ge"]) - target.rho_ge),
        )
        parts.append(f"steady-state distance={dist:.3e}")
    where = f" -> {path}" if path is not None else ""
    return f"{config.stem}: {', '.join(parts)}{where}"


def _resolve_out_dir(flag_value: str | None, config_dir: Path | None) -> Path:
    if flag_value is not None:
        return Path(flag_value)
    if config_dir is not None:
        return config_dir
    env = os.environ.get(ENV_OUT_DIR)
    return Path(env) if env else Path("out")


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    updates: dict[str, Any] = {}
    if args.dt is not None:
        updates["dt"] = args.dt
    if args.t_end is not None:
        updates["t_end"] = args.t_end
    if args.format is not None:
        updates["output"] = dataclasses.replace(config.output, format=args.format)
    return dataclasses.replace(config, **updates) if updates else config


def _write(config: ScenarioConfig, rows: list[dict[str, Any]], out_dir: Path) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{config.stem}.{config.output.format}"
    if config.output.format == "csv":
        write_csv(path, rows)
    else:
        write_json(path, config.to_dict(), rows)
    return path


def cmd_run(args: argparse.Namespace) -> int:
    if args.target in PRESETS:
        configs = preset_runs(args.target, fmt=args.format or "csv")
    else:
        configs = expand_sweep(load_config(args.target))
    configs = [_apply_overrides(c, args) for c in configs]
    results = _run_many(configs, args.workers)
    for config, rows in zip(configs, results):
        path = _write(config, rows, _resolve_out_dir(args.out_dir, config.output.directory))
        print(_summary_line(config, rows, path))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args.target)
    if config.sweep is None:
        raise InvalidConfig("sweep command needs a config with a non-empty sweep list")
    config = _apply_overrides(config, args)
    singles = expand_sweep(config)
    results = _run_many(singles, args.workers)
    merged: list[dict[str, Any]] = []
    for single, rows in zip(singles, results):
        merged.extend(rows)
        print(_summary_line(single, rows, None))
    out_dir = _resolve_out_dir(args.out_dir, config.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{config.stem}.{config.output.format}"
    if config.output.format == "csv":
        write_csv(path, merged)
    else:
        write_json(path, config.to_dict(), merged)
    print(f"merged {len(singles)} runs -> {path}")
    return EXIT_OK


def cmd_steady(args: argparse.Namespace) -> int:
    config = load_config(args.target)
    protocol = config.protocol
    if isinstance(protocol, ContinuousDrive):
        omega = protocol.omega
    elif isinstance(protocol, NoDrive):
        omega = 0.0
    else:
        raise InvalidConfig("steady command needs a continuous (or drive-free) protocol")
    battery = BatteryHamiltonian.qubit(config.physics.omega0_battery)
    deltas = config.sweep if config.sweep is not None else (config.physics.delta,)
    print("delta rho_ee_ss W W_IC W_C")
    for delta in sorted(deltas):
        physics = dataclasses.replace(config.physics, delta=float(delta))
        fixed = steady_state(ContinuousDrive(omega), physics)
        b = ergotropy_breakdown(fixed, battery)
        print(
            f"{delta:g} {fixed.rho_ee:.12g} {b.total:.12g} {b.incoherent:.12g} {b.coherent:.12g}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergokit",
        description="Simulate work extraction from a driven two-level emitter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out-dir", default=None, help="output directory (default: $ERGOKIT_OUT_DIR or ./out)")
        p.add_argument("--dt", type=float, default=None, help="override the integrator step")
        p.add_argument("--t-end", type=float, default=None, help="override the simulated span")
        p.add_argument("--workers", type=int, default=1, help="parallel workers for independent runs")
        p.add_argument("--format", choices=("csv", "json"), default=None, help="output format")

    p_run = sub.add_parser("run", help="run a preset (fig2..fig5) or a scenario file")
    p_run.add_argument("target", help=f"preset name {PRESETS} or path to a scenario TOML")
    add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a detuning sweep and merge into one file")
    p_sweep.add_argument("target", help="scenario TOML with a sweep list")
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_steady = sub.add_parser("steady", help="print the analytic steady-state table")
    p_steady.add_argument("target", help="scenario TOML with a continuous protocol")
    p_steady.set_defaults(func=cmd_steady)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonPhysicalState, NoConvergence, ConsistencyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        name = getattr(exc, "filename", None)
        print(f"i/o failure{f' on {name}' if name else ''}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
