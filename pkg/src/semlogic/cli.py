from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import selftest
from .errors import SemlogicError
from .experiments import (
    LESSMORE_FIELDS,
    MISINFO_FIELDS,
    ExperimentConfig,
    emit,
    load_config,
    run_bounds,
    run_demo,
    run_simulation,
)
from .kernels import Scenario
from .protocols import ProtocolConfig

log = logging.getLogger("semlogic")

SCENARIOS = [s.value for s in Scenario]


def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--scenario", choices=SCENARIOS)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--workers", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semlogic", description="Deduction-aware communication toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="closed-form bound tables (Less-is-More and misinformation)")
    b.add_argument("--config", help="JSON with lessmore_p_s, lessmore_p_r, lessmore_grid, misinfo_p_s, misinfo_grid")
    b.add_argument("--table", choices=["lessmore", "misinfo", "both"], default="both")
    b.add_argument("--out", help="CSV path; with --table both, writes <stem>_lessmore and <stem>_misinfo")
    b.add_argument("--format", choices=["csv", "json"], default="csv")

    s = sub.add_parser("simulate", help="Monte Carlo protocol runs")
    s.add_argument("--config", help="experiment config JSON")
    _add_overrides(s)

    d = sub.add_parser("demo", help="run one protocol on concrete statements")
    d.add_argument("--s", required=True, help="sender statement, e.g. 'X1 & X2'")
    d.add_argument("--r", required=True, help="receiver statement")
    d.add_argument("--q", help="query statement (known_r only; defaults to S)")
    d.add_argument("--scenario", choices=SCENARIOS, default="unknown_r")
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--margin", type=int, default=8)
    d.add_argument("--scheme", choices=["enumerative", "codebook"], default="enumerative")
    d.add_argument("--json", help="write the run record as JSON to this path")
    d.add_argument("--dump", help="write the concatenated transcript bits to this binary file")

    sub.add_parser("selftest", help="run the invariant sweep")
    return parser


def _cmd_bounds(args: argparse.Namespace) -> int:
    kwargs = {}
    if args.config:
        kwargs = json.loads(Path(args.config).read_text(encoding="utf-8"))
    tables = run_bounds(**kwargs)
    fields = {"lessmore": LESSMORE_FIELDS, "misinfo": MISINFO_FIELDS}
    names = ["lessmore", "misinfo"] if args.table == "both" else [args.table]
    for name in names:
        path = None
        if args.out:
            out = Path(args.out)
            path = out if len(names) == 1 else out.with_name(f"{out.stem}_{name}{out.suffix or '.csv'}")
        emit(tables[name], args.format, path, fields[name])
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    cfg = cfg.override(
        m=args.m, trials=args.trials, seed=args.seed, scenario=args.scenario,
        out=args.out, format=args.format, workers=args.workers,
    )
    log.info("simulating %s over %d grid points x %d trials", cfg.scenario.value, len(cfg.grid()), cfg.trials)
    emit(run_simulation(cfg), cfg.format, cfg.out)
    return 0


def _cmd_demo(args: argparse.Namespace) -> int:
    cfg = ProtocolConfig(seed=args.seed, margin_bits=args.margin)
    record = run_demo(args.s, args.r, args.scenario, args.m, args.seed, args.q, cfg, args.scheme, dump_path=args.dump)
    if args.json:
        Path(args.json).write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")
    else:
        print(json.dumps(record))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "demo":
            return _cmd_demo(args)
        return 0 if selftest.run() else 1
    except (SemlogicError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"semlogic: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
