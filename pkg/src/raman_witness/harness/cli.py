"""Command line entry point: ``raman-witness scan|compare|table1``."""
from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import replace
from pathlib import Path

from ..fock import DimensionTooLarge, TailMassTooLarge, ToleranceNotMet
from ..model import ParameterError
from ..witnesses import ImaginaryResidue
from .config import PRESETS, ConfigError, OracleConfig, build_config, parse_text, _convert
from .emit import EmitError, emit, fmt

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
OUT_ENV = "RAMAN_WITNESS_OUT"


def default_out() -> Path:
    return Path(os.environ.get(OUT_ENV, "out"))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key = value config file")
    p.add_argument("--preset", choices=PRESETS)
    p.add_argument("--phi", help="comma separated phases, e.g. '0,pi/2,pi'")
    p.add_argument("--t-max", type=float)
    p.add_argument("--t-steps", type=int)
    p.add_argument("--frame", choices=("corotating", "absolute"))
    p.add_argument("--out", type=Path, help=f"output directory (default ${OUT_ENV} or ./out)")
    p.add_argument("--format", choices=("csv", "json", "both"), default=None)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raman-witness",
                                     description="Entanglement witnesses of four-mode Raman scattering")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("scan", help="witness time/phase scan"))
    cmp_ = sub.add_parser("compare", help="closed forms against the truncated-space oracle")
    _common(cmp_)
    cmp_.add_argument("--cutoff", type=int, help="photon-number cutoff per mode")
    cmp_.add_argument("--alpha-scale", type=float)
    cmp_.add_argument("--tol", type=float)
    cmp_.add_argument("--f3-reading", choices=("sq", "lin"))
    t1 = sub.add_parser("table1", help="classification matrix and diff against the expected pattern")
    _common(t1)
    return parser


def load(args: argparse.Namespace, oracle: bool = False):
    values = parse_text(args.config.read_text()) if args.config else {}
    overrides = {"preset": args.preset, "phi": args.phi, "t_max": args.t_max,
                 "t_steps": args.t_steps, "frame": args.frame, "output_format": args.format}
    if oracle:
        overrides.update({"oracle_alpha_scale": args.alpha_scale, "oracle_tol": args.tol,
                          "f3_reading": args.f3_reading,
                          "oracle_cutoffs": None if args.cutoff is None else str(args.cutoff)})
    for key, val in overrides.items():
        if val is not None:
            values[key] = _convert(key, str(val)) if isinstance(val, str) else val
    cfg = build_config(values)
    if oracle and cfg.oracle is None:
        cfg = replace(cfg, oracle=OracleConfig())
    return cfg


def _out_dir(args, cfg) -> Path:
    if args.out is not None:
        return args.out
    if cfg.output_dir:
        return Path(cfg.output_dir)
    return default_out()


def cmd_scan(args) -> int:
    from .scan import run_scan
    cfg = load(args)
    result = run_scan(cfg, jobs=args.jobs)
    for path in emit(result, _out_dir(args, cfg), cfg.output_format):
        print(path)
    return EXIT_OK


def cmd_compare(args) -> int:
    from .compare import compare_report
    cfg = load(args, oracle=True)
    report = compare_report(cfg)
    out = _out_dir(args, cfg)
    try:
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "compare.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            keys = ("pair", "criterion", "phi", "t", "closed_form", "oracle", "abs_err", "rel_err")
            w.writerow(keys)
            for r in report.rows:
                w.writerow([r[k] if isinstance(r[k], str) else fmt(r[k]) for k in keys])
        with open(out / "compare_fits.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("pair", "criterion", "phi", "ratio", "slope", "max_abs_err", "scale",
                        "third_order", "within_tolerance"))
            for (pair, crit, phi), f in report.fits.items():
                w.writerow((pair.label, crit.value, fmt(phi), fmt(f.ratio), fmt(f.slope),
                            fmt(f.max_abs_err), fmt(f.scale), f.third_order, f.within_tolerance))
    except OSError as exc:
        raise EmitError(str(exc)) from None
    for (pair, crit, phi), f in report.fits.items():
        print(f"{crit.value:<4} {pair.label} phi={phi:.4f} ratio={f.ratio:8.3f} slope={f.slope:6.3f} "
              f"err/scale={f.max_abs_err / f.scale if f.scale else 0.0:.3e}")
    for pair, entry in report.f3_arbitration.items():
        print(f"Duan {pair}: max err sq={entry['sq']:.3e} lin={entry['lin']:.3e} "
              f"-> {entry['tracks_oracle']} tracks the oracle")
    print(out / "compare.csv")
    return EXIT_OK


def cmd_table1(args) -> int:
    from .table1 import format_table, table1
    cfg = load(args)
    text = format_table(table1(cfg, jobs=args.jobs))
    sys.stdout.write(text)
    if args.out is not None or args.config is not None:
        out = _out_dir(args, cfg)
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "table1.txt").write_text(text)
        except OSError as exc:
            raise EmitError(str(exc)) from None
    return EXIT_OK


COMMANDS = {"scan": cmd_scan, "compare": cmd_compare, "table1": cmd_table1}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ToleranceNotMet, TailMassTooLarge, ImaginaryResidue, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ParameterError, DimensionTooLarge, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
