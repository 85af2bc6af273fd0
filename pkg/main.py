#!/usr/bin/env python
"""
Main entry point for the hybrid beamforming simulator.

Usage:
    python main.py simulate [config] [options] [--<key> <value> ...]
    python main.py sweep [config] --axis <name> --values v1,v2,...
    python main.py bounds [config]
    python main.py decompose --n N --k K --nf NF [--cpps p --flow asym|sym]

Examples:
    python main.py simulate experiments/bound_check.cfg --trials 20 --out results/bound_check.csv
    python main.py sweep experiments/desk.cfg --axis n_rf --values 8,16,24
    python main.py bounds experiments/bound_check.cfg --format json --out results/bounds.json
    python main.py decompose --n 64 --k 8 --nf 16 --cpps 2 --flow sym

Any configuration key can be given as a flag of the same name
(--n-antennas 32 or --n_antennas 32). Exit codes: 0 success, 2 configuration
error, 1 runtime error.
"""
import argparse
import logging
import sys
from pathlib import Path

import pandas as pd

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src import settings  # noqa: E402
from src.bounds import BoundParams, bound_table  # noqa: E402
from src.errors import ConfigError, SimulationError  # noqa: E402
from src.harness import (  # noqa: E402
    FORMATS, SWEEP_AXES, decompose_diagnostics, emit, load_config, run_experiment,
    summarize, sweep,
)
from src.harness.config import FIELD_PARSERS, normalize_key  # noqa: E402

logger = logging.getLogger("hbsim")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(None), help="Master seed")
    parser.add_argument("--trials", type=int, default=default(None), help="Monte Carlo trials")
    parser.add_argument("--workers", type=int, default=default(None), help="Trial threads")
    parser.add_argument("--out", default=default(None), help="Output file")
    parser.add_argument("--format", choices=FORMATS, default=default("csv"))
    parser.add_argument("--log-level", default=default(settings.LOG_LEVEL))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hbsim", description="Hybrid analog-digital beamforming simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter, epilog=__doc__)
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", parents=[common], help="Run a Monte Carlo experiment")
    sim.add_argument("config", nargs="?", help="key = value config file")

    sw = sub.add_parser("sweep", parents=[common], help="Sweep one axis on shared draws")
    sw.add_argument("config", nargs="?", help="key = value config file")
    sw.add_argument("--axis", required=True, choices=sorted(SWEEP_AXES))
    sw.add_argument("--values", required=True, help="Comma-separated axis values")

    bd = sub.add_parser("bounds", parents=[common], help="Average-rate upper bounds")
    bd.add_argument("config", nargs="?", help="key = value config file")

    dec = sub.add_parser("decompose", parents=[common], help="Factorization diagnostics")
    dec.add_argument("--n", type=int, required=True, help="Antennas")
    dec.add_argument("--k", type=int, required=True, help="Users per sub-carrier")
    dec.add_argument("--nf", type=int, required=True, help="Sub-carriers")
    dec.add_argument("--cpps", type=int, default=0, help="CPPS precision p (0 = off)")
    dec.add_argument("--flow", choices=("asym", "sym"), default="asym")
    dec.add_argument("--col-cap", type=int, default=None, help="Symmetric-flow L~")
    dec.add_argument("--switches", default=None, help="Write switch triplets to this CSV")
    return parser


def parse_overrides(extra):
    """--key value / --key=value pairs for config fields."""
    overrides = {}
    i = 0
    while i < len(extra):
        token = extra[i]
        if not token.startswith("--"):
            raise ConfigError(token, "unexpected argument")
        if "=" in token:
            key, value = token.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(extra):
                raise ConfigError(normalize_key(token), "missing value")
            key, value = token, extra[i + 1]
            i += 2
        key = normalize_key(key)
        if key not in FIELD_PARSERS:
            raise ConfigError(key, "unknown configuration key")
        overrides[key] = value
    return overrides


def experiment_config(args, extra):
    overrides = parse_overrides(extra)
    for key in ("seed", "trials", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    return load_config(args.config, overrides)


def print_banner(title):
    print("=" * 60)
    print(title)
    print("=" * 60)


def write_or_print(table, args):
    if args.out:
        path = emit(table, args.out, args.format)
        print(f"Wrote {len(table)} rows to {path}")
    else:
        print(table.to_string(index=False))


def cmd_simulate(args, extra):
    config = experiment_config(args, extra)
    print_banner(f"Simulating {', '.join(config.modes)} on {config.channel} channels")
    table = run_experiment(config)
    write_or_print(table, args)
    print()
    print(summarize(table).to_string(index=False))
    return EXIT_OK


def cmd_sweep(args, extra):
    config = experiment_config(args, extra)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    try:
        values = [float(v) for v in values]
    except ValueError:
        raise ConfigError("values", f"cannot parse '{args.values}'") from None
    print_banner(f"Sweeping {args.axis} over {values}")
    table = sweep(config, args.axis, values)
    write_or_print(table, args)
    print()
    print(summarize(table).to_string(index=False))
    return EXIT_OK


def cmd_bounds(args, extra):
    config = experiment_config(args, extra)
    params = BoundParams(n_antennas=config.n_antennas, n_rf=config.n_rf, k=config.k_max,
                         k_total=config.k_total, n_subcarriers=config.n_subcarriers,
                         power=0.0, noise_var=config.noise_var)
    print_banner(f"Bounds: K_g={params.k_g}, K_s={params.k_s}, S~={params.s_tilde_bound}")
    table = bound_table(params, config.snr_db, k_max=config.k_max)
    write_or_print(table, args)
    return EXIT_OK


def cmd_decompose(args, extra):
    if extra:
        raise ConfigError(extra[0], "unexpected argument")
    seed = args.seed if getattr(args, "seed", None) is not None else settings.SEED
    diag = decompose_diagnostics(args.n, args.k, args.nf, seed=seed, cpps=args.cpps,
                                 flow=args.flow, col_cap=args.col_cap,
                                 switches_path=args.switches)
    print_banner(f"Hybrid factorization N={args.n}, K={args.k}, N_f={args.nf}")
    for key, value in diag.items():
        print(f"  {key:28s} {value}")
    if args.out:
        path = emit(pd.DataFrame([diag]), args.out, args.format)
        print(f"Wrote diagnostics to {path}")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
    "decompose": cmd_decompose,
}


def main(argv=None):
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    level = logging.getLevelName(str(args.log_level).upper())
    if not isinstance(level, int):
        print(f"Configuration error: log-level: unknown level '{args.log_level}'",
              file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=level, format=settings.LOG_FORMAT)
    try:
        return COMMANDS[args.command](args, extra)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (SimulationError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
